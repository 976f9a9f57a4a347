#include "taut/goldens.hpp"

namespace taut {

// The tables below are data, not computation: they were transcribed
// once, cross-checked coefficient by coefficient against the
// independent intersection-number engine, and are now frozen.  Any
// code change that alters these expansions is a regression.

std::string lambda_reference(int g, int n) {
  if (g == 1 && n == 2)
    return "1/24 * G(1,2)[v0:0; legs 1:v0,2:v0; edges (v0,v0)]";
  if (g == 2 && n == 0)
    return "1/1152 * G(2,0)[v0:0; edges (v0,v0),(v0,v0)]"
           " + 1/240 * G(2,0)[v0:1; edges (v0,v0)] psi{H1:1}";
  if (g == 3 && n == 0)
    return "-1/5760 * G(3,0)[v0:0,v1:1; edges (v0,v0),(v0,v1),(v0,v1)]"
           " + -13/30240 * G(3,0)[v0:0,v1:1; edges (v0,v1),(v0,v1),(v0,v1)]"
           " + 1/82944 * G(3,0)[v0:0; edges (v0,v0),(v0,v0),(v0,v0)]"
           " + -1/672 * G(3,0)[v0:1,v1:1; edges (v0,v1),(v0,v1)] psi{H3:1}"
           " + 1/5760 * G(3,0)[v0:1; edges (v0,v0),(v0,v0)] psi{H3:1}"
           " + 1/2016 * G(3,0)[v0:2; edges (v0,v0)] psi{H1:2}"
           " + 1/2016 * G(3,0)[v0:2; edges (v0,v0)] psi{H0:1,H1:1}";
  return "";
}

std::string lambda_product_reference(int g) {
  if (g == 2)
    return "-1/480 * G(2,0)[v0:1; edges (v0,v0)] psi{H1:1} marker{v0:P}";
  if (g == 3)
    return "-1/2688 * G(3,0)[v0:1,v1:1; edges (v0,v1),(v0,v1)] psi{H3:1}"
           " marker{v0:P,v1:P}"
           " + 1/8064 * G(3,0)[v0:2; edges (v0,v0)] psi{H1:2} marker{v0:P}"
           " + 1/8064 * G(3,0)[v0:2; edges (v0,v0)] psi{H0:1,H1:1}"
           " marker{v0:P}";
  if (g == 4)
    // one-loop coefficients carry the full 1/(l! m!) binomial weights
    // demanded by the certified identity (the verifier arbitrates)
    return "-1/7680 * G(4,0)[v0:1,v1:1,v2:1; edges (v0,v1),(v0,v2),(v1,v2)]"
           " psi{H5:1} marker{v0:P,v1:P,v2:P}"
           " + 1/23040 * G(4,0)[v0:1,v1:2; edges (v0,v1),(v0,v1)] psi{H3:2}"
           " marker{v0:P,v1:P}"
           " + 1/11520 * G(4,0)[v0:1,v1:2; edges (v0,v1),(v0,v1)]"
           " psi{H2:1,H3:1} marker{v0:P,v1:P}"
           " + 1/23040 * G(4,0)[v0:1,v1:2; edges (v0,v1),(v0,v1)] psi{H2:2}"
           " marker{v0:P,v1:P}"
           " + 1/30720 * G(4,0)[v0:1,v1:2; edges (v0,v1),(v0,v1)]"
           " psi{H1:1,H3:1} marker{v0:P,v1:P}"
           " + 1/15360 * G(4,0)[v0:1,v1:2; edges (v0,v1),(v0,v1)]"
           " psi{H1:1,H2:1} marker{v0:P,v1:P}"
           " + 1/30720 * G(4,0)[v0:1,v1:2; edges (v0,v1),(v0,v1)]"
           " psi{H0:1,H2:1} marker{v0:P,v1:P}"
           " + -1/92160 * G(4,0)[v0:3; edges (v0,v0)] psi{H1:3} marker{v0:P}"
           " + -1/30720 * G(4,0)[v0:3; edges (v0,v0)] psi{H0:1,H1:2}"
           " marker{v0:P}";
  return "";
}

} // namespace taut
