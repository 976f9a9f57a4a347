#pragma once
#include "taut/graphs.hpp"
#include "taut/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace taut {

// Extra per-vertex factors beyond psi and kappa decorations.
struct VertexMarker {
  std::vector<int> lambdas;  // Chern classes of the Hodge bundle, sorted
  std::vector<int> chs;      // odd Chern character components, sorted
  int pixton = 0;            // degree-g_v weightless tautological vertex class
  bool lambda_poly = false;  // total Chern polynomial sum_j lambda_j u0^j
  Rat u0;

  bool empty() const {
    return lambdas.empty() && chs.empty() && pixton == 0 && !lambda_poly;
  }
};

// One boundary stratum with decorations: psi powers at half-edges and
// legs, kappa classes and markers per vertex.  The class it denotes is
// the pushforward of the decoration along the gluing map, with NO
// implicit automorphism factor; coefficients are always explicit.
struct DecoratedStratum {
  StableGraph graph;
  std::vector<int> he_psi;            // size 2 * E
  std::map<int, int> leg_psi;         // marking -> exponent
  std::vector<std::vector<int>> kappas;
  std::vector<VertexMarker> markers;

  static DecoratedStratum plain(StableGraph g);
  int leg_exp(int marking) const {
    auto it = leg_psi.find(marking);
    return it == leg_psi.end() ? 0 : it->second;
  }
  // codimension of the class (edges + decoration degrees); markers of
  // mixed degree (lambda_poly) make this undefined and throw
  int codim() const;
};

// Canonical string for the isomorphism class of a decorated stratum.
std::string decorated_key(const DecoratedStratum& s);

class TautClass {
public:
  struct Term {
    Rat coeff;
    DecoratedStratum strat;
  };

  TautClass() = default;
  static TautClass fundamental(int g, int n);  // trivial graph, coefficient 1

  void add_term(Rat coeff, DecoratedStratum s);
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  TautClass& operator+=(const TautClass& o);
  friend TautClass operator+(TautClass a, const TautClass& b) { a += b; return a; }
  TautClass operator*(const Rat& s) const;

  // merge isomorphic strata (coefficients add), drop zero terms, order
  // deterministically
  void normalize();

  std::string str() const;

private:
  std::vector<Term> terms_;
};

bool same_class(TautClass a, TautClass b);  // normalize both and compare

// ---- ring operations ----

struct Divisor {
  enum class Kind { kappa1, psi, irr, sep };
  Kind kind;
  int marking = 0;         // psi
  int h = 0;               // sep: genus of one side
  std::vector<int> side;   // sep: markings on that side, sorted

  static Divisor kappa1();
  static Divisor psi(int marking);
  static Divisor irr();
  static Divisor sep(int h, std::vector<int> side);
  std::string str() const;
};

TautClass multiply_divisor(const TautClass& X, const Divisor& D);
TautClass multiply_kappa(const TautClass& X, int a);
TautClass multiply_lambda(const TautClass& X, int j);

// Replace vertex v of one stratum by a class on its moduli space.  The
// inner class must be marked 1..n_v matching v's attachment slots in
// the order: legs of v sorted by marking, then half-edges ascending.
// Any kappa / lambda / ch decorations at v distribute over the inner
// vertices; a pixton marker at v must have been removed by the caller.
TautClass substitute_vertex(const Rat& coeff, const DecoratedStratum& s, int v,
                            const TautClass& inner);

// Pushforward along the map forgetting marking m.
TautClass forget_marking(const TautClass& X, int m);

// Integral over the ambient space; markers other than pixton are fine,
// pixton markers must be expanded first.
Rat integrate(const TautClass& X);

// ---- text round-trip ----
std::string stratum_str(const DecoratedStratum& s);
TautClass parse_taut(const std::string& text);

} // namespace taut
