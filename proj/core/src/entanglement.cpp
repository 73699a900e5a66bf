#include "dimerchain/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace dimerchain {

PairState pair_rdm(const PairCorrelatorSet& c) {
    PairState st;
    st.rho.setZero();
    st.rho(0, 0) = 0.25 + 0.5 * (c.mz_i + c.mz_j) + c.zz;
    st.rho(1, 1) = 0.25 + 0.5 * (c.mz_i - c.mz_j) - c.zz;
    st.rho(2, 2) = 0.25 - 0.5 * (c.mz_i - c.mz_j) - c.zz;
    st.rho(3, 3) = 0.25 - 0.5 * (c.mz_i + c.mz_j) + c.zz;
    st.rho(1, 2) = st.rho(2, 1) = c.xx + c.yy;
    st.rho(0, 3) = st.rho(3, 0) = c.xx - c.yy;

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(st.rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -1e-9)
        throw std::runtime_error("two-site density matrix has a negative eigenvalue (" +
                                 std::to_string(es.eigenvalues()(0)) +
                                 "); upstream correlators are inconsistent");
    wootters(st);
    return st;
}

void wootters(PairState& state) {
    const Eigen::Matrix4d& r = state.rho;
    double xx = 0.5 * r(1, 2) + 0.5 * r(0, 3);
    double yy = 0.5 * r(1, 2) - 0.5 * r(0, 3);
    double zz = 0.25 * (r(0, 0) - r(1, 1) - r(2, 2) + r(3, 3));
    double mzi = 0.5 * (r(0, 0) + r(1, 1) - r(2, 2) - r(3, 3));
    double mzj = 0.5 * (r(0, 0) - r(1, 1) + r(2, 2) - r(3, 3));

    auto branch = [&](int sign) {
        // C^+- = 2[ |<xx -+ yy>| - sqrt((1/4 -+ zz)^2 - (<z_i -+ z_j>/2)^2) ]
        double off = std::abs(xx - sign * yy);
        double a = 0.25 - sign * zz;
        double b = 0.5 * (mzi - sign * mzj);
        double rad = a * a - b * b;
        return 2.0 * (off - std::sqrt(std::max(0.0, rad)));
    };
    state.c_parallel = branch(+1);
    state.c_antiparallel = branch(-1);
    state.concurrence = std::max({state.c_parallel, state.c_antiparallel, 0.0});
    if (state.concurrence <= 0.0)
        state.alignment = PairAlignment::separable;
    else if (state.c_parallel >= state.c_antiparallel)
        state.alignment = PairAlignment::parallel;
    else
        state.alignment = PairAlignment::antiparallel;
    state.formation_entropy = formation_entropy(state.concurrence);
}

double wootters_eigenvalue_route(const Eigen::Matrix4d& rho) {
    // R = sqrt((4 sy sy) rho (4 sy sy) rho*): eigenvalues of the product are
    // the squared Wootters lambdas; the square root is taken on the spectrum
    Eigen::Matrix4d flip = Eigen::Matrix4d::Zero();
    flip(0, 3) = flip(3, 0) = -1.0;
    flip(1, 2) = flip(2, 1) = 1.0;

    Eigen::Matrix4d prod = flip * rho * flip * rho; // rho real here
    Eigen::EigenSolver<Eigen::Matrix4d> es(prod);
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i)
        lam[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double formation_entropy(double concurrence) {
    if (concurrence < 0.0 || concurrence > 1.0 + 1e-12)
        throw std::invalid_argument("concurrence outside [0,1]");
    concurrence = std::min(concurrence, 1.0);
    double root = std::sqrt(std::max(0.0, 1.0 - concurrence * concurrence));
    double p = 0.5 * (1.0 + root);
    double q = 0.5 * (1.0 - root);
    double s = 0.0;
    if (p > 0) s -= p * std::log2(p);
    if (q > 0) s -= q * std::log2(q);
    return s;
}

SingleSite single_site(double mz) {
    if (std::abs(mz) > 0.5 + 1e-12)
        throw std::invalid_argument("|<s^z>| > 1/2 is not a spin-1/2 magnetization");
    double arg = std::max(0.0, 1.0 - 4.0 * mz * mz);
    SingleSite out;
    out.concurrence = std::sqrt(arg);
    out.entropy = formation_entropy(out.concurrence);
    return out;
}

} // namespace dimerchain
