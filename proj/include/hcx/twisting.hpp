// Twisting cochains C -> A and the correspondence with coalgebra maps C -> BA.
#pragma once

#include "hcx/barcobar.hpp"

#include <string>

namespace hcx {

class NotATwistingCochain : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Degree -1 map; column j = image of the j-th basis element of the source.
struct TwistingCochain {
    Coalgebra source;
    Algebra target;
    SparseMatrix map;
};

struct TwistCheck {
    bool ok = true;
    std::string witness;
};

// delta(theta) + theta^2 with delta(theta) = d_A theta + theta d_C and
// theta^2 = m (theta (x) theta) Delta, Koszul sign (-1)^|c'| on c' (x) c''.
SparseMatrix twisting_defect(const TwistingCochain& t);
TwistCheck is_twisting_cochain(const TwistingCochain& t);

TwistingCochain universal_cochain(const BarCoalgebra& b);

// The coalgebra map C -> BA with weight-n component (s theta)^{(x)n} Delta^(n),
// plus the counit onto the empty word. Words beyond the bar's cap are an
// error. Requires a verified cochain.
SparseMatrix lift(const TwistingCochain& t, const BarCoalgebra& b);
SparseMatrix lift_unchecked(const TwistingCochain& t, const BarCoalgebra& b);

// Weight-one part of f, read as a degree -1 map C -> A.
TwistingCochain corestrict(const SparseMatrix& f, const Coalgebra& source, const BarCoalgebra& b);

// Delta_tgt f = (f (x) f) Delta_src on every source basis element.
bool is_coalgebra_map(const SparseMatrix& f, const Coalgebra& src, const Coalgebra& tgt, std::string* witness = nullptr);
// d_tgt f = f d_src
bool is_chain_map(const SparseMatrix& f, const Coalgebra& src, const Coalgebra& tgt, std::string* witness = nullptr);

SparseMatrix coalgebra_differential(const Coalgebra& c);

}  // namespace hcx
