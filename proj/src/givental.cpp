#include "taut/givental.hpp"

#include "taut/bernoulli.hpp"
#include "taut/bigphase.hpp"
#include "taut/integrals.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>

namespace taut {

namespace {

// u-series arithmetic on plain coefficient vectors [u^0 .. u^U]
std::vector<Rat> series_conv(const std::vector<Rat>& a,
                             const std::vector<Rat>& b, int U) {
  std::vector<Rat> out(U + 1, Rat(0));
  for (int i = 0; i <= U && i < int(a.size()); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j + i <= U && j < int(b.size()); ++j)
      out[i + j] += a[i] * b[j];
  }
  return out;
}

bool series_zero(const std::vector<Rat>& a) {
  for (const Rat& c : a)
    if (!c.is_zero()) return false;
  return true;
}

BiSeries r_exponent(unsigned tu, unsigned tz, bool negated) {
  if (tu < 1 || tz < 1)
    throw std::invalid_argument("r_matrix: truncation orders must be >= 1");
  BiSeries e(tu, tz);
  for (unsigned i = 1; 2 * i - 1 <= tu && 2 * i - 1 <= tz; ++i) {
    Rat c = bernoulli(2 * i) / Rat(long(2 * i) * long(2 * i - 1));
    if (negated) c = -c;
    e.add_coeff(2 * i - 1, 2 * i - 1, c);
  }
  return e;
}

// jet coordinates of the shifted argument: t'(z) = (1 - R^{-1}(z)) z,
// so t'_j = -[z^{j-1}] R^{-1} for j >= 2 and t'_0 = t'_1 = 0.
// jets[j][p] is the u^p coefficient of t'_j.
std::vector<std::vector<Rat>> shift_jets(int U) {
  BiSeries rinv = r_matrix_inverse(unsigned(U), unsigned(U + 1));
  std::vector<std::vector<Rat>> jets(U + 2, std::vector<Rat>(U + 1, Rat(0)));
  for (int j = 2; j <= U + 1; ++j)
    for (int p = 1; p <= U; ++p)
      jets[j][p] = -rinv.coeff(unsigned(p), unsigned(j - 1));
  return jets;
}

// Jet of the genus-g potential at the shifted argument with the given
// half-edge psi powers: sum over multisets of coordinate insertions
// (each of positive u-order) of the bare correlator times the product
// of coordinate series, with the multiset's repetition factor.
std::vector<Rat> vertex_jet(int g, const std::vector<int>& ks, int U,
                            const std::vector<std::vector<Rat>>& jets) {
  std::vector<Rat> out(U + 1, Rat(0));
  std::vector<int> parts;  // insertion u-orders j - 1, nondecreasing
  std::function<void(int, int)> rec = [&](int min_part, int left) {
    // close the current multiset
    std::vector<int> taus = ks;
    for (int q : parts) taus.push_back(q + 1);
    Rat base = psi_integral(g, taus);
    if (!base.is_zero()) {
      for (std::size_t i = 0; i < parts.size();) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        base *= inv_factorial(unsigned(j - i));
        i = j;
      }
      std::vector<Rat> series(1, base);
      for (int q : parts) series = series_conv(series, jets[q + 1], U);
      for (int p = 0; p <= U && p < int(series.size()); ++p) out[p] += series[p];
    }
    // extend it
    for (int q = min_part; q <= left; ++q) {
      parts.push_back(q);
      rec(q, left - q);
      parts.pop_back();
    }
  };
  rec(1, U);
  return out;
}

Rat ch_scale(int l) { return bernoulli(unsigned(2 * l)) * inv_factorial(unsigned(2 * l)); }

// all nondecreasing tuples of the given size with entries in [0, kmax]
void for_multisets(int size, int kmax,
                   const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int lo) {
    if (int(cur.size()) == size) {
      fn(cur);
      return;
    }
    for (int k = lo; k <= kmax; ++k) {
      cur.push_back(k);
      rec(k);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

BiSeries r_matrix(unsigned tu, unsigned tz) {
  return r_exponent(tu, tz, false).exp_of();
}

BiSeries r_matrix_inverse(unsigned tu, unsigned tz) {
  return r_exponent(tu, tz, true).exp_of();
}

const Rat& EdgeKernel::at(unsigned k, unsigned l, unsigned p) const {
  if (k + l > deg_ || p > tu_)
    throw std::out_of_range("EdgeKernel::at: outside the tabulated range");
  return v_[k][l][p];
}

EdgeKernel edge_kernel(unsigned tu, unsigned tz) {
  BiSeries rinv = r_matrix_inverse(tu, tz);
  // numerator 1 - R(-w) R(-z) = 1 - R^{-1}(w) R^{-1}(z), tabulated as
  // n[k][l] = u-series of [w^k z^l]
  std::vector<std::vector<std::vector<Rat>>> n(
      tz + 1, std::vector<std::vector<Rat>>(tz + 1,
                                            std::vector<Rat>(tu + 1, Rat(0))));
  for (unsigned k = 0; k <= tz; ++k)
    for (unsigned l = 0; l <= tz; ++l)
      for (unsigned p = 0; p <= tu; ++p) {
        Rat s(0);
        for (unsigned q = 0; q <= p; ++q)
          s += rinv.coeff(q, k) * rinv.coeff(p - q, l);
        n[k][l][p] = -s;
      }
  n[0][0][0] += Rat(1);

  EdgeKernel K;
  K.tu_ = tu;
  K.deg_ = tz - 1;
  K.v_.assign(tz, std::vector<std::vector<Rat>>(
                      tz, std::vector<Rat>(tu + 1, Rat(0))));
  // peel w: n[k][l] = v[k-1][l] + v[k][l-1] gives v[k][l] column by column
  for (unsigned l = 0; l < tz; ++l)
    for (unsigned k = 0; k + l < tz; ++k)
      for (unsigned p = 0; p <= tu; ++p)
        K.v_[k][l][p] =
            n[k + 1][l][p] - (l > 0 ? K.v_[k + 1][l - 1][p] : Rat(0));
  // the w^0 row of the numerator is the remainder constraint
  for (unsigned l = 0; l <= tz; ++l)
    for (unsigned p = 0; p <= tu; ++p) {
      Rat want = (l > 0 && l - 1 < tz) ? K.v_[0][l - 1][p] : Rat(0);
      if (n[0][l][p] != want)
        throw std::runtime_error(
            "edge_kernel: numerator is not divisible by w + z");
    }
  return K;
}

std::vector<Rat> feynman_contribution(const StableGraph& G, int U) {
  if (U < 0) throw std::invalid_argument("feynman_contribution: U >= 0");
  if (G.num_legs() > 0)
    throw std::invalid_argument("feynman_contribution: graphs carry no legs");
  const int E = G.num_edges();
  const int V = G.num_vertices();
  std::vector<Rat> out(U + 1, Rat(0));
  if (E > U) return out;  // every edge costs at least one power of u
  if (U == 0) {
    // no room for jets or edges: the bare zero-point correlator
    out[0] = psi_integral(G.genus[0], {});
    return out;
  }

  EdgeKernel K = edge_kernel(unsigned(U), unsigned(U + 1));
  std::vector<std::vector<Rat>> jets = shift_jets(U);
  std::map<std::pair<int, std::vector<int>>, std::vector<Rat>> jet_memo;

  std::vector<int> he_pow(std::size_t(2 * E), 0);
  std::function<void(int, int)> rec = [&](int e, int used) {
    if (e == E) {
      std::vector<Rat> acc(1, Rat(1));
      for (int f = 0; f < E; ++f) {
        std::vector<Rat> vs(U + 1, Rat(0));
        for (int p = 0; p <= U; ++p)
          vs[p] = K.at(unsigned(he_pow[2 * f]), unsigned(he_pow[2 * f + 1]),
                       unsigned(p));
        acc = series_conv(acc, vs, U);
        if (series_zero(acc)) return;
      }
      for (int v = 0; v < V; ++v) {
        std::vector<int> ks;
        for (int h : G.half_edges_at(v)) ks.push_back(he_pow[h]);
        auto key = std::make_pair(G.genus[v], ks);
        auto it = jet_memo.find(key);
        if (it == jet_memo.end())
          it = jet_memo.emplace(key, vertex_jet(G.genus[v], ks, U, jets))
                   .first;
        acc = series_conv(acc, it->second, U);
        if (series_zero(acc)) return;
      }
      for (int p = 0; p <= U; ++p) out[p] += acc[p];
      return;
    }
    int room = U - used - (E - e - 1);  // later edges cost >= 1 each
    for (int k = 0; k + 1 <= room; ++k)
      for (int l = 0; k + l + 1 <= room; ++l) {
        he_pow[std::size_t(2 * e)] = k;
        he_pow[std::size_t(2 * e + 1)] = l;
        rec(e + 1, used + k + l + 1);
      }
  };
  rec(0, 0);
  return out;
}

std::vector<Rat> feynman_sum(int g, int U, int max_edges) {
  if (g < 2) throw std::invalid_argument("feynman_sum: needs genus >= 2");
  if (U < 0) throw std::invalid_argument("feynman_sum: U >= 0");
  int me = max_edges < 0 ? U : max_edges;
  std::vector<Rat> out(U + 1, Rat(0));
  for (const StableGraph& G : enumerate_stable_bounded(g, 0, me)) {
    std::vector<Rat> c = feynman_contribution(G, U);
    Rat w = Rat(1) / Rat(automorphism_order(G));
    for (int p = 0; p <= U; ++p) out[p] += w * c[p];
  }
  return out;
}

Rat ch_jet_direct(int l, int g, const std::vector<int>& extras) {
  if (l < 1) throw std::invalid_argument("ch_jet_direct: needs l >= 1");
  if (g < 1) throw std::invalid_argument("ch_jet_direct: needs genus >= 1");
  return hodge_integral(g, extras, {}, {}, {2 * l - 1});
}

Rat ch_jet_operator(int l, int g, const std::vector<int>& extras) {
  if (l < 1) throw std::invalid_argument("ch_jet_operator: needs l >= 1");
  return ch_scale(l) * d_operator_jet(g, l, extras);
}

bool d_operator_check(int l, int depth) {
  if (l < 1) throw std::invalid_argument("d_operator_check: needs l >= 1");
  if (depth < 0) throw std::invalid_argument("d_operator_check: depth >= 0");
  bool ok = true;
  for (int g = 1; g <= 2 && ok; ++g)
    for (int n = 0; n <= depth && ok; ++n)
      for_multisets(n, 3 * g - 3 + n, [&](const std::vector<int>& E) {
        if (ch_jet_direct(l, g, E) != ch_jet_operator(l, g, E)) ok = false;
      });
  if (!ok || depth < 2) return ok;

  // mixed second order: inserting ch_{2a-1} ch_{2b-1} directly must
  // match applying the operator jets in either order.  The once-
  // twisted theory's correlators are the raw single-ch jets; the
  // surviving operator contributes its own Bernoulli weight.
  auto twist = [](int a) {
    return CorrFn([a](int g, const std::vector<int>& ks) {
      if (g < 1) return Rat(0);
      return hodge_integral(g, ks, {}, {}, {2 * a - 1});
    });
  };
  for (int a : {1, l})
    for (int g = 1; g <= 2 && ok; ++g)
      for (int n = 0; n + 1 <= depth && n <= 2 && ok; ++n)
        for_multisets(n, 3 * g - 3 + n, [&](const std::vector<int>& E) {
          Rat direct =
              hodge_integral(g, E, {}, {}, {2 * a - 1, 2 * l - 1});
          Rat first = ch_scale(l) * d_operator_jet_twisted(twist(a), g, l, E);
          Rat second = ch_scale(a) * d_operator_jet_twisted(twist(l), g, a, E);
          if (first != direct || second != direct) ok = false;
        });
  return ok;
}

}  // namespace taut
