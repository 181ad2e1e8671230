#pragma once

#include <array>

namespace acmdm::detail {

// 15-point Kronrod extension of the 7-point Gauss-Legendre rule on [-1, 1].
// gauss_weight is zero at the Kronrod-only nodes.
struct GaussKronrod15 {
    static constexpr int size = 15;
    std::array<double, size> node;
    std::array<double, size> kronrod_weight;
    std::array<double, size> gauss_weight;
};

inline constexpr GaussKronrod15 make_gk15() {
    constexpr std::array<double, 8> xgk = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    constexpr std::array<double, 8> wgk = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    // Gauss nodes are xgk[1], xgk[3], xgk[5], xgk[7].
    constexpr std::array<double, 4> wg = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

    GaussKronrod15 r{};
    for (int k = 0; k < 7; ++k) {
        r.node[k] = -xgk[k];
        r.node[14 - k] = xgk[k];
        r.kronrod_weight[k] = r.kronrod_weight[14 - k] = wgk[k];
        const double g = (k % 2 == 1) ? wg[k / 2] : 0.0;
        r.gauss_weight[k] = r.gauss_weight[14 - k] = g;
    }
    r.node[7] = 0.0;
    r.kronrod_weight[7] = wgk[7];
    r.gauss_weight[7] = wg[3];
    return r;
}

inline constexpr GaussKronrod15 gk15 = make_gk15();

}  // namespace acmdm::detail
