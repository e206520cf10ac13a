#include "skdv/field.hpp"

namespace skdv::num {

RealArray body_projection_field(const AlgebraField& xi) {
    RealArray out(xi.points(), 0.0);
    for (const auto& [ia, va] : xi.channels()) {
        for (const auto& [ib, vb] : xi.channels()) {
            auto [idx, sign] = basis_mul(xi.kind(), ia, ib);
            if (sign == 0 || !idx.empty()) continue;
            const double s = sign * bar_sign(ib);
            for (int j = 0; j < xi.points(); ++j) out[j] += s * va[j] * vb[j];
        }
    }
    return out;
}

}  // namespace skdv::num
