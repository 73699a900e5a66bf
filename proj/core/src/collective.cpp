#include "dimerchain/collective.hpp"

#include <cmath>
#include <stdexcept>

namespace dimerchain {

namespace {

// S^+|S,M> = cp(S,M)|S,M+1>
double cp(double S, double M) { return std::sqrt(S * (S + 1) - M * (M + 1)); }

struct Multiplet {
    double S_o, S_e;
    int d_o, d_e;
    double M_o(int a) const { return S_o - a; }   // rows descending
    double M_e(int b) const { return S_e - b; }
    int idx(int a, int b) const { return a * d_e + b; }
};

} // namespace

CollectivePair collective_ground_states(int n, double s_o, double s_e, AxisTriple v,
                                        double b_odd, double b_even, long dim_cap) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("collective model needs even n");
    int m = n / 2;
    Multiplet mult;
    mult.S_o = m * s_o;
    mult.S_e = m * s_e;
    mult.d_o = static_cast<int>(std::lround(2 * mult.S_o)) + 1;
    mult.d_e = static_cast<int>(std::lround(2 * mult.S_e)) + 1;
    long dim = static_cast<long>(mult.d_o) * mult.d_e;
    if (dim > dim_cap)
        throw std::domain_error("collective multiplet dimension exceeds the cap");

    double g = 2.0 / n; // pair coupling scale, v^sigma(l) = 2 v / n per odd l
    double vp = 0.25 * (v.x + v.y) * g;
    double vm = 0.25 * (v.x - v.y) * g;
    double vz = v.z * g;

    // parity of a basis state: (-1)^{M_o + M_e + S_o + S_e}
    auto state_parity = [&](int a, int b) {
        long q = std::lround(mult.M_o(a) + mult.M_e(b) + mult.S_o + mult.S_e);
        return (q % 2 == 0) ? +1 : -1;
    };

    CollectivePair out;
    for (int sector : {+1, -1}) {
        std::vector<int> map(dim, -1);
        std::vector<std::pair<int, int>> states;
        for (int a = 0; a < mult.d_o; ++a)
            for (int b = 0; b < mult.d_e; ++b)
                if (state_parity(a, b) == sector) {
                    map[mult.idx(a, b)] = static_cast<int>(states.size());
                    states.push_back({a, b});
                }

        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(states.size(), states.size());
        for (size_t col = 0; col < states.size(); ++col) {
            auto [a, b] = states[col];
            double Mo = mult.M_o(a), Me = mult.M_e(b);
            H(col, col) += b_odd * Mo + b_even * Me - vz * Mo * Me;
            // - vp (S+_o S-_e + S-_o S+_e) - vm (S+_o S+_e + S-_o S-_e)
            if (a > 0 && b + 1 < mult.d_e) { // S+_o S-_e
                int row = map[mult.idx(a - 1, b + 1)];
                H(row, col) += -vp * cp(mult.S_o, Mo) * cp(mult.S_e, Me - 1);
            }
            if (a + 1 < mult.d_o && b > 0) { // S-_o S+_e
                int row = map[mult.idx(a + 1, b - 1)];
                H(row, col) += -vp * cp(mult.S_o, Mo - 1) * cp(mult.S_e, Me);
            }
            if (a > 0 && b > 0) { // S+_o S+_e
                int row = map[mult.idx(a - 1, b - 1)];
                H(row, col) += -vm * cp(mult.S_o, Mo) * cp(mult.S_e, Me);
            }
            if (a + 1 < mult.d_o && b + 1 < mult.d_e) { // S-_o S-_e
                int row = map[mult.idx(a + 1, b + 1)];
                H(row, col) += -vm * cp(mult.S_o, Mo - 1) * cp(mult.S_e, Me - 1);
            }
        }

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        CollectiveState st;
        st.n = n;
        st.spin_site_odd = s_o;
        st.spin_site_even = s_e;
        st.S_o = mult.S_o;
        st.S_e = mult.S_e;
        st.parity = sector;
        st.energy = es.eigenvalues()(0);
        st.amplitudes = Eigen::MatrixXd::Zero(mult.d_o, mult.d_e);
        for (size_t r = 0; r < states.size(); ++r)
            st.amplitudes(states[r].first, states[r].second) = es.eigenvectors()(r, 0);
        (sector > 0 ? out.plus : out.minus) = std::move(st);
    }
    return out;
}

CollectiveMoments collective_moments(const CollectiveState& st) {
    const Eigen::MatrixXd& A = st.amplitudes;
    int d_o = static_cast<int>(A.rows());
    int d_e = static_cast<int>(A.cols());
    auto Mo = [&](int a) { return st.S_o - a; };
    auto Me = [&](int b) { return st.S_e - b; };

    CollectiveMoments mom;
    double spsm_o = 0, spsm_e = 0;       // <S+_s S-_s>
    double spsp_o = 0, spsp_e = 0;       // <(S+_s)^2> (= <(S-_s)^2> for real states)
    double spsm_oe = 0, spsp_oe = 0;     // <S+_o S-_e>, <S+_o S+_e>
    double sz2_o = 0, sz2_e = 0;

    for (int a = 0; a < d_o; ++a)
        for (int b = 0; b < d_e; ++b) {
            double amp = A(a, b);
            if (amp == 0.0) continue;
            double w = amp * amp;
            mom.sz_o += w * Mo(a);
            mom.sz_e += w * Me(b);
            sz2_o += w * Mo(a) * Mo(a);
            sz2_e += w * Me(b) * Me(b);
            mom.szsz_oe += w * Mo(a) * Me(b);
            spsm_o += w * (st.S_o * (st.S_o + 1) - Mo(a) * (Mo(a) - 1));
            spsm_e += w * (st.S_e * (st.S_e + 1) - Me(b) * (Me(b) - 1));

            if (a >= 2) // <S+_o^2>: connects M_o with M_o + 2
                spsp_o += A(a - 2, b) * cp(st.S_o, Mo(a) + 1) * cp(st.S_o, Mo(a)) * amp;
            if (b >= 2)
                spsp_e += A(a, b - 2) * cp(st.S_e, Me(b) + 1) * cp(st.S_e, Me(b)) * amp;
            if (a >= 1 && b + 1 < d_e) // S+_o S-_e
                spsm_oe += A(a - 1, b + 1) * cp(st.S_o, Mo(a)) * cp(st.S_e, Me(b) - 1) * amp;
            if (a >= 1 && b >= 1) // S+_o S+_e
                spsp_oe += A(a - 1, b - 1) * cp(st.S_o, Mo(a)) * cp(st.S_e, Me(b)) * amp;
        }

    // <(S^x)^2> = (2 <S+S-> - 2 <S^z> + 2 Re<S+S+>)/4 for real states
    mom.szsz_oo = sz2_o;
    mom.szsz_ee = sz2_e;
    mom.sxsx_oo = 0.25 * (2.0 * spsm_o - 2.0 * mom.sz_o + 2.0 * spsp_o);
    mom.sysy_oo = 0.25 * (2.0 * spsm_o - 2.0 * mom.sz_o - 2.0 * spsp_o);
    mom.sxsx_ee = 0.25 * (2.0 * spsm_e - 2.0 * mom.sz_e + 2.0 * spsp_e);
    mom.sysy_ee = 0.25 * (2.0 * spsm_e - 2.0 * mom.sz_e - 2.0 * spsp_e);
    mom.sxsx_oe = 0.5 * (spsm_oe + spsp_oe);
    mom.sysy_oe = 0.5 * (spsm_oe - spsp_oe);
    return mom;
}

CollectiveObservables collective_pair_concurrences(const CollectiveState& st) {
    if (st.spin_site_odd != 0.5 || st.spin_site_even != 0.5)
        throw std::domain_error("pairwise concurrences require spin-1/2 sites");
    int m = st.n / 2;
    if (m < 2)
        throw std::domain_error("same-sublattice pairs require n >= 4");
    CollectiveMoments mom = collective_moments(st);

    CollectiveObservables obs;
    obs.m_o = mom.sz_o / m;
    obs.m_e = mom.sz_e / m;

    double denom_same = static_cast<double>(m) * (m - 1);
    PairCorrelatorSet oo;
    oo.mz_i = oo.mz_j = obs.m_o;
    oo.zz = (mom.szsz_oo - 0.25 * m) / denom_same;
    oo.xx = (mom.sxsx_oo - 0.25 * m) / denom_same;
    oo.yy = (mom.sysy_oo - 0.25 * m) / denom_same;
    PairCorrelatorSet ee;
    ee.mz_i = ee.mz_j = obs.m_e;
    ee.zz = (mom.szsz_ee - 0.25 * m) / denom_same;
    ee.xx = (mom.sxsx_ee - 0.25 * m) / denom_same;
    ee.yy = (mom.sysy_ee - 0.25 * m) / denom_same;

    PairCorrelatorSet oe;
    oe.mz_i = obs.m_o;
    oe.mz_j = obs.m_e;
    oe.zz = mom.szsz_oe / (static_cast<double>(m) * m);
    oe.xx = mom.sxsx_oe / (static_cast<double>(m) * m);
    oe.yy = mom.sysy_oe / (static_cast<double>(m) * m);

    obs.oo = oo;
    obs.ee = ee;
    obs.oe = oe;

    PairState ps = pair_rdm(oo);
    obs.c_oo = ps.concurrence;
    obs.align_oo = ps.alignment;
    ps = pair_rdm(ee);
    obs.c_ee = ps.concurrence;
    obs.align_ee = ps.alignment;
    ps = pair_rdm(oe);
    obs.c_oe = ps.concurrence;
    obs.align_oe = ps.alignment;

    obs.c_site_o = single_site(obs.m_o).concurrence;
    obs.c_site_e = single_site(obs.m_e).concurrence;
    return obs;
}

} // namespace dimerchain
