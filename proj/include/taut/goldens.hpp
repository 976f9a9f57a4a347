#pragma once
#include <string>

namespace taut {

// Embedded reference tables: canonical strata text for the expansion of
// the Hodge top class on small moduli spaces.  Used by the command-line
// `--compare-paper` diff and by the acceptance gate as drift-proof
// regression anchors.  Returns the empty string when no table is
// embedded for the pair (g, n).
std::string lambda_reference(int g, int n);

// Reference tables for the boundary expansion of lambda_g*lambda_{g-1}
// (the right side of the identity certified by `verify lambda-product`,
// with vertex class markers left unexpanded).  Empty when no table is
// embedded for g.
std::string lambda_product_reference(int g);

} // namespace taut
