#include "knotrep/snf.hpp"

#include <algorithm>

namespace knotrep {

LaurentSmithForm smith_normal_form(const Matrix<LaurentPoly>& M) {
    LaurentSmithForm out;
    Matrix<QPoly> P(M.rows(), M.cols());
    for (std::size_t i = 0; i < M.rows(); ++i) {
        long lo = 0;
        bool any = false;
        for (std::size_t j = 0; j < M.cols(); ++j) {
            if (M(i, j).is_zero()) continue;
            lo = any ? std::min(lo, M(i, j).low()) : M(i, j).low();
            any = true;
        }
        out.row_shift.push_back(any ? -lo : 0);
        for (std::size_t j = 0; j < M.cols(); ++j) {
            if (M(i, j).is_zero()) continue;
            P(i, j) = M(i, j).body().shifted(static_cast<std::size_t>(M(i, j).low() - lo));
        }
    }
    out.snf = smith_normal_form(P);
    return out;
}

}  // namespace knotrep
