#include "dimerchain/jw_solver.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dimerchain {

using cd = std::complex<double>;

double QuadraticForm::omega() const { return 4.0 * std::numbers::pi / n; }

std::vector<double> QuadraticForm::momenta() const {
    std::vector<double> ks(m());
    for (int j = 0; j < m(); ++j) ks[j] = (parity > 0) ? j + 0.5 : j;
    return ks;
}

bool fermionizable(const ChainSpec& spec) {
    try {
        fermionize(spec, +1);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

QuadraticForm fermionize(const ChainSpec& spec, int parity) {
    spec.validate();
    if (parity != +1 && parity != -1) throw std::invalid_argument("parity must be +-1");
    if (spec.spin_odd != 0.5 || spec.spin_even != 0.5)
        throw std::domain_error("Jordan-Wigner route requires spin-1/2 sites");
    if (spec.boundary != Boundary::cyclic)
        throw std::domain_error("Jordan-Wigner route requires a cyclic chain");
    if (spec.n < 4 || spec.n % 2 != 0)
        throw std::domain_error("Jordan-Wigner route requires even n >= 4");
    for (int l : spec.couplings.separations())
        if (l != 1) throw std::domain_error("Jordan-Wigner route covers nearest neighbors only");

    AxisTriple vo = spec.couplings.at(Sublattice::odd, 1);
    AxisTriple ve = spec.couplings.at(Sublattice::even, 1);
    if (vo.z != 0.0 || ve.z != 0.0)
        throw std::domain_error("Jordan-Wigner route requires XY couplings (v_z = 0)");

    QuadraticForm qf;
    qf.n = spec.n;
    qf.parity = parity;
    if (!spec.field.is_two_periodic(spec.n, qf.b_odd, qf.b_even))
        throw std::domain_error("Jordan-Wigner route requires an alternating (or uniform) field");
    qf.v_plus_odd = 0.25 * (vo.x + vo.y);
    qf.v_minus_odd = 0.25 * (vo.x - vo.y);
    qf.v_plus_even = 0.25 * (ve.x + ve.y);
    qf.v_minus_even = 0.25 * (ve.x - ve.y);
    return qf;
}

namespace {

cd v_plus_k(const QuadraticForm& qf, double k) {
    return qf.v_plus_odd + qf.v_plus_even * std::exp(cd(0, -qf.omega() * k));
}
cd v_minus_k(const QuadraticForm& qf, double k) {
    return qf.v_minus_odd - qf.v_minus_even * std::exp(cd(0, -qf.omega() * k));
}

Eigen::Matrix4cd bdg_block(const QuadraticForm& qf, double k) {
    cd vp = v_plus_k(qf, k);
    cd vm = v_minus_k(qf, k);
    double bo = qf.b_odd, be = qf.b_even;
    Eigen::Matrix4cd H;
    H << bo, -vp, 0, -vm,
        -std::conj(vp), be, std::conj(vm), 0,
        0, vm, -bo, vp,
        -std::conj(vm), 0, std::conj(vp), -be;
    return H;
}

// particle-hole swap of the Nambu halves
Eigen::Vector4cd x_swap(const Eigen::Vector4cd& w) {
    Eigen::Vector4cd out;
    out << w(2), w(3), w(0), w(1);
    return out;
}

// rotate a column's phase so its largest component is real positive (used to
// keep self-conjugate blocks, whose H_k is real, on real eigenvectors)
Eigen::Vector4cd realign(const Eigen::Vector4cd& w) {
    int imax = 0;
    double best = 0;
    for (int i = 0; i < 4; ++i)
        if (std::abs(w(i)) > best) {
            best = std::abs(w(i));
            imax = i;
        }
    cd phase = w(imax) / std::abs(w(imax));
    return w / phase;
}

// Exact many-body diagonalization of a momentum group (one self-conjugate k:
// 2 modes; a (k,-k) pair: 4 modes).  Returns the lowest energy per fermion
// parity, including the group's share of the constant term.
struct GroupSpectrum {
    double e_even = 0;
    double e_odd = 0;
    int vacuum_parity() const { return e_even <= e_odd ? +1 : -1; }
    double flip_cost() const { return std::abs(e_even - e_odd); }
    double minimum() const { return std::min(e_even, e_odd); }
};

GroupSpectrum group_spectrum(const QuadraticForm& qf, const std::vector<double>& ks) {
    // modes ordered (k, o), (k, e) [, (-k, o), (-k, e)]
    int modes = 2 * static_cast<int>(ks.size());
    int dim = 1 << modes;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);

    auto sign_below = [](int state, int mode) {
        int mask = (1 << mode) - 1;
        return (__builtin_popcount(state & mask) % 2 == 0) ? 1.0 : -1.0;
    };
    auto add_number = [&](int a, double amp) {
        for (int s = 0; s < dim; ++s)
            if (s & (1 << a)) H(s, s) += amp;
    };
    auto add_hop = [&](int a, int b, cd amp) { // amp c+_a c_b + conj hermitian partner
        if (a == b || amp == cd(0, 0)) return;
        for (int s = 0; s < dim; ++s) {
            if (!(s & (1 << b)) || (s & (1 << a))) continue;
            int t = s & ~(1 << b);
            double sgn = sign_below(s, b) * sign_below(t, a);
            int u = t | (1 << a);
            H(u, s) += amp * sgn;
            H(s, u) += std::conj(amp * sgn);
        }
    };
    auto add_pair = [&](int a, int b, cd amp) { // amp c+_a c+_b + h.c.
        if (a == b || amp == cd(0, 0)) return;
        for (int s = 0; s < dim; ++s) {
            if ((s & (1 << b)) || (s & (1 << a))) continue;
            int t = s | (1 << b);
            double sgn = sign_below(s, b) * sign_below(t, a);
            int u = t | (1 << a);
            H(u, s) += amp * sgn;
            H(s, u) += std::conj(amp * sgn);
        }
    };

    double constant = -0.5 * (qf.b_odd + qf.b_even) * static_cast<double>(ks.size());
    for (size_t q = 0; q < ks.size(); ++q) {
        int o = static_cast<int>(2 * q);
        int e = o + 1;
        add_number(o, qf.b_odd);
        add_number(e, qf.b_even);
        add_hop(o, e, -v_plus_k(qf, ks[q]));
        // pairing couples k with -k, i.e. the other slot of a pair group (or
        // the same slot at a self-conjugate momentum)
        size_t qbar = (ks.size() == 2) ? 1 - q : q;
        int ebar = static_cast<int>(2 * qbar) + 1;
        add_pair(o, ebar, -v_minus_k(qf, ks[q]));
    }

    GroupSpectrum out;
    for (int par = 0; par < 2; ++par) {
        std::vector<int> idx;
        for (int s = 0; s < dim; ++s)
            if (__builtin_popcount(s) % 2 == par) idx.push_back(s);
        Eigen::MatrixXcd block(idx.size(), idx.size());
        for (size_t a = 0; a < idx.size(); ++a)
            for (size_t b = 0; b < idx.size(); ++b) block(a, b) = H(idx[a], idx[b]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block, Eigen::EigenvaluesOnly);
        double low = es.eigenvalues()(0) + constant;
        if (par == 0)
            out.e_even = low;
        else
            out.e_odd = low;
    }
    return out;
}

} // namespace

std::pair<double, double> closed_form_lambdas(const QuadraticForm& qf, double k) {
    cd vp = v_plus_k(qf, k);
    cd vm = v_minus_k(qf, k);
    double bo = qf.b_odd, be = qf.b_even;
    double delta = 0.5 * (bo * bo + be * be) + std::norm(vp) + std::norm(vm);
    cd inner = bo * be - (vp + vm) * (std::conj(vp) - std::conj(vm));
    double disc = std::max(0.0, delta * delta - std::norm(inner));
    double root = std::sqrt(disc);
    double lp = std::sqrt(std::max(0.0, delta + root));
    double lm = std::sqrt(std::max(0.0, delta - root));
    return {lp, lm};
}

std::vector<MomentumBlock> momentum_blocks(const QuadraticForm& qf) {
    int m = qf.m();
    auto ks = qf.momenta();
    std::vector<MomentumBlock> blocks(m);

    auto partner_of = [&](int j) {
        return (qf.parity > 0) ? (m - 1 - j) : (m - j) % m;
    };

    for (int j = 0; j < m; ++j) {
        int jp = partner_of(j);
        if (jp < j) continue;

        MomentumBlock blk;
        blk.k = ks[j];
        blk.index = j;
        blk.partner = jp;
        blk.H = bdg_block(qf, ks[j]);
        auto [lp, lm] = closed_form_lambdas(qf, ks[j]);
        blk.lambda_plus = lp;
        blk.lambda_minus = lm;

        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(blk.H);
        Eigen::Vector4d want;
        want << -lp, -lm, lm, lp; // ascending
        blk.snap_error = (es.eigenvalues() - want).cwiseAbs().maxCoeff();
        double scale = std::max(1.0, std::abs(lp));
        if (blk.snap_error > 1e-9 * scale)
            throw std::runtime_error("momentum block eigenvalues disagree with closed form");

        blk.w_pos.col(0) = es.eigenvectors().col(3);
        blk.w_pos.col(1) = es.eigenvectors().col(2);
        if (jp == j) {
            // H_k is real here; pin the arbitrary eigenvector phases to real
            blk.w_pos.col(0) = realign(blk.w_pos.col(0));
            blk.w_pos.col(1) = realign(blk.w_pos.col(1));
        }
        if (lm < 1e-9 * scale) {
            // zero mode: the +-lambda_- eigenvectors span a 2-dim space the
            // numerical solver splits arbitrarily.  X anticommutes with H_k
            // and squares to one, so diagonalizing X on that space gives
            // x_+, x_-; w_0 = (x_+ + x_-)/sqrt(2) is a canonical particle
            // column with hole X w_0 = (x_+ - x_-)/sqrt(2) orthogonal to it.
            Eigen::Vector4cd z1 = es.eigenvectors().col(1);
            Eigen::Vector4cd z2 = es.eigenvectors().col(2);
            if (jp == j) {
                z1 = realign(z1);
                z2 = realign(z2);
            }
            Eigen::Matrix2cd xz;
            xz << z1.dot(x_swap(z1)), z1.dot(x_swap(z2)), z2.dot(x_swap(z1)),
                z2.dot(x_swap(z2));
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> xe(xz);
            if (std::abs(xe.eigenvalues()(0) + 1.0) > 1e-6 ||
                std::abs(xe.eigenvalues()(1) - 1.0) > 1e-6)
                throw std::runtime_error("zero-mode space lacks the particle-hole split");
            Eigen::Vector4cd x_minus = xe.eigenvectors()(0, 0) * z1 + xe.eigenvectors()(1, 0) * z2;
            Eigen::Vector4cd x_plus = xe.eigenvectors()(0, 1) * z1 + xe.eigenvectors()(1, 1) * z2;
            blk.w_pos.col(1) = (x_plus + x_minus) / std::sqrt(2.0);
            if (jp == j) blk.w_pos.col(1) = realign(blk.w_pos.col(1));
        }
        // holes are the particle-hole images within the same block
        blk.w_neg.col(0) = x_swap(blk.w_pos.col(0));
        blk.w_neg.col(1) = x_swap(blk.w_pos.col(1));

        if (jp == j) {
            blocks[j] = blk;
        } else {
            // H_{-k} = conj(H_k): the -k particles are the conjugated +k ones,
            // which realizes exact time-reversal pairing a_{k,nu} <-> a_{-k,nu}
            MomentumBlock part;
            part.k = ks[jp];
            part.index = jp;
            part.partner = j;
            part.H = bdg_block(qf, ks[jp]);
            part.lambda_plus = lp;
            part.lambda_minus = lm;
            part.snap_error = blk.snap_error;
            part.w_pos = blk.w_pos.conjugate();
            part.w_neg = blk.w_neg.conjugate();
            blocks[j] = blk;
            blocks[jp] = part;
        }
    }
    return blocks;
}

namespace {

struct CrossTerm {
    int j_a = 0;            // block index of k*
    int j_b = 0;            // block index of -k*
    Eigen::Matrix4cd C;     // <A_{k*} A+_{-k*}>
};

// assemble f, g from per-block Nambu correlations G_k = <A_k A+_k> plus
// optional cross-momentum corrections (time-reversal pair states)
void assemble_contractions(const QuadraticForm& qf, const std::vector<double>& ks,
                           const std::vector<Eigen::Matrix4cd>& G,
                           const std::vector<CrossTerm>& cross, ContractionTable& table) {
    int m = qf.m();
    int n = qf.n;
    double w = qf.omega();
    Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);

    for (int u = 0; u < m; ++u)
        for (int up = 0; up < m; ++up)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    cd facc(0, 0), gacc(0, 0);
                    for (int j = 0; j < m; ++j) {
                        cd phase = std::exp(cd(0, -w * ks[j] * (u - up)));
                        facc += phase * ((a == b ? 1.0 : 0.0) - G[j](b, a));
                        gacc += phase * (-G[j](2 + b, a));
                    }
                    f(2 * u + a, 2 * up + b) = facc / static_cast<double>(m);
                    g(2 * u + a, 2 * up + b) = gacc / static_cast<double>(m);
                }

    // cross corrections; psi_k(u) = exp(-i w k (u+1))
    auto psi = [&](double k, int u) { return std::exp(cd(0, -w * k * (u + 1))); };
    for (const auto& ct : cross) {
        double ka = ks[ct.j_a];
        double kb = ks[ct.j_b];
        for (int u = 0; u < m; ++u)
            for (int up = 0; up < m; ++up)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        // f: (k = -k*, k' = k*) uses C, (k = k*, k' = -k*) uses C+
                        cd df = -psi(kb, u) * std::conj(psi(ka, up)) * ct.C(b, a) -
                                psi(ka, u) * std::conj(psi(kb, up)) * std::conj(ct.C(a, b));
                        // g: (k = -k*, k' = -k*) uses C, (k = k*, k' = k*) uses C+
                        cd dg = -psi(kb, u) * psi(kb, up) * ct.C(2 + b, a) -
                                psi(ka, u) * psi(ka, up) * std::conj(ct.C(a, 2 + b));
                        f(2 * u + a, 2 * up + b) += df / static_cast<double>(m);
                        g(2 * u + a, 2 * up + b) += dg / static_cast<double>(m);
                    }
    }

    for (int t = 0; t < n; ++t) f(t, t) -= 0.5;

    double imag_norm =
        std::max(f.imag().cwiseAbs().maxCoeff(), g.imag().cwiseAbs().maxCoeff());
    if (imag_norm > 1e-9)
        throw std::runtime_error("contractions acquired imaginary parts; gauge broken");

    table.f = f.real();
    table.g = g.real();
}

} // namespace

namespace {

struct SectorPlan {
    int vacuum_parity = +1;
    double vacuum_energy = 0;
    double best_flip = 0;
    int flip_block = -1;
    int flip_col = -1;
    bool repaired = false;
    double energy = 0;
};

SectorPlan plan_sector(const QuadraticForm& qf, const std::vector<double>& ks,
                       const std::vector<MomentumBlock>& blocks) {
    SectorPlan plan;
    plan.best_flip = std::numeric_limits<double>::max();
    for (int j = 0; j < qf.m(); ++j) {
        const MomentumBlock& blk = blocks[j];
        if (blk.partner < j) continue;
        std::vector<double> group_ks{ks[j]};
        if (blk.partner != j) group_ks.push_back(ks[blk.partner]);

        GroupSpectrum gs = group_spectrum(qf, group_ks);
        plan.vacuum_parity *= gs.vacuum_parity();
        plan.vacuum_energy += gs.minimum();

        double lam_min = std::min(blk.lambda_plus, blk.lambda_minus);
        double scale = std::max(1.0, std::abs(gs.minimum()));
        double evac = (blk.partner == j) ? -0.5 * (blk.lambda_plus + blk.lambda_minus)
                                         : -(blk.lambda_plus + blk.lambda_minus);
        if (std::abs(gs.minimum() - evac) > 1e-8 * scale)
            throw std::runtime_error("group vacuum energy disagrees with quasiparticle sum");
        if (std::abs(gs.flip_cost() - lam_min) > 1e-8 * std::max(1.0, lam_min))
            throw std::runtime_error("group flip cost disagrees with the cheapest quasiparticle");

        if (lam_min < plan.best_flip) {
            plan.best_flip = lam_min;
            plan.flip_block = j;
            plan.flip_col = (blk.lambda_minus <= blk.lambda_plus) ? 1 : 0;
        }
    }
    plan.repaired = (plan.vacuum_parity != qf.parity);
    plan.energy = plan.vacuum_energy + (plan.repaired ? plan.best_flip : 0.0);
    return plan;
}

} // namespace

double sector_energy(const QuadraticForm& qf) {
    auto ks = qf.momenta();
    auto blocks = momentum_blocks(qf);
    return plan_sector(qf, ks, blocks).energy;
}

SectorSolution solve_sector(const QuadraticForm& qf) {
    auto ks = qf.momenta();
    auto blocks = momentum_blocks(qf);
    SectorPlan plan = plan_sector(qf, ks, blocks);
    int m = qf.m();
    double best_flip = plan.best_flip;
    int flip_block = plan.flip_block;
    int flip_col = plan.flip_col;

    SectorSolution sol;
    sol.parity = qf.parity;
    sol.min_lambda = best_flip;
    sol.repaired = plan.repaired;
    sol.energy = plan.energy;

    std::vector<Eigen::Matrix4cd> Gvac(m);
    for (int j = 0; j < m; ++j)
        Gvac[j] = blocks[j].w_pos.col(0) * blocks[j].w_pos.col(0).adjoint() +
                  blocks[j].w_pos.col(1) * blocks[j].w_pos.col(1).adjoint();

    auto base_table = [&]() {
        ContractionTable t;
        t.n = qf.n;
        t.parity = qf.parity;
        t.energy = sol.energy;
        t.repaired = sol.repaired;
        t.min_lambda = sol.min_lambda;
        return t;
    };

    if (!sol.repaired) {
        ContractionTable t = base_table();
        assemble_contractions(qf, ks, Gvac, {}, t);
        sol.tables.push_back(std::move(t));
        return sol;
    }

    const MomentumBlock& fb = blocks[flip_block];
    int jp = fb.partner;
    double lam_scale = std::max(1.0, best_flip);
    bool column_degenerate = std::abs(fb.lambda_plus - fb.lambda_minus) < 1e-12 * lam_scale;

    if (jp == flip_block && !column_degenerate) {
        // unique repair at a self-conjugate momentum
        auto G = Gvac;
        G[flip_block] -= fb.w_pos.col(flip_col) * fb.w_pos.col(flip_col).adjoint();
        G[flip_block] += fb.w_neg.col(flip_col) * fb.w_neg.col(flip_col).adjoint();
        ContractionTable t = base_table();
        assemble_contractions(qf, ks, G, {}, t);
        sol.tables.push_back(std::move(t));
        return sol;
    }

    sol.degenerate = true;
    if (jp == flip_block) {
        // degenerate doublet at one self-conjugate momentum: the two flips
        for (int col : {0, 1}) {
            auto G = Gvac;
            G[flip_block] -= fb.w_pos.col(col) * fb.w_pos.col(col).adjoint();
            G[flip_block] += fb.w_neg.col(col) * fb.w_neg.col(col).adjoint();
            ContractionTable t = base_table();
            assemble_contractions(qf, ks, G, {}, t);
            sol.tables.push_back(std::move(t));
        }
        return sol;
    }

    // repair on a +-k pair: the time-reversal-symmetric combinations
    // b_s = (a+_{k*} + s a+_{-k*})/sqrt(2), s = +-1, are real Gaussian states
    const MomentumBlock& pb = blocks[jp];
    for (int s : {+1, -1}) {
        auto G = Gvac;
        G[flip_block] -= 0.5 * fb.w_pos.col(flip_col) * fb.w_pos.col(flip_col).adjoint();
        G[flip_block] += 0.5 * fb.w_neg.col(flip_col) * fb.w_neg.col(flip_col).adjoint();
        G[jp] -= 0.5 * pb.w_pos.col(flip_col) * pb.w_pos.col(flip_col).adjoint();
        G[jp] += 0.5 * pb.w_neg.col(flip_col) * pb.w_neg.col(flip_col).adjoint();

        CrossTerm ct;
        ct.j_a = flip_block;
        ct.j_b = jp;
        ct.C = (-0.5 * s) * fb.w_pos.col(flip_col) * pb.w_pos.col(flip_col).adjoint() +
               (0.5 * s) * fb.w_neg.col(flip_col) * pb.w_neg.col(flip_col).adjoint();

        ContractionTable t = base_table();
        assemble_contractions(qf, ks, G, {ct}, t);
        sol.tables.push_back(std::move(t));
    }
    return sol;
}

SectorSolution solve_sector(const ChainSpec& spec, int parity) {
    return solve_sector(fermionize(spec, parity));
}

ContractionTable sector_ground_state(const QuadraticForm& qf) {
    return solve_sector(qf).tables.front();
}

ContractionTable sector_ground_state(const ChainSpec& spec, int parity) {
    return sector_ground_state(fermionize(spec, parity));
}

double SectorSolution::magnetization(int i) const {
    double acc = 0.0;
    for (const auto& t : tables) acc += t.f(i - 1, i - 1);
    return acc / static_cast<double>(tables.size());
}

PairCorrelatorSet SectorSolution::pair(int i, int j) const {
    PairCorrelatorSet acc;
    for (const auto& t : tables) {
        PairCorrelatorSet c = pair_correlators(t, i, j);
        acc.mz_i += c.mz_i;
        acc.mz_j += c.mz_j;
        acc.zz += c.zz;
        acc.xx += c.xx;
        acc.yy += c.yy;
    }
    double w = 1.0 / static_cast<double>(tables.size());
    acc.mz_i *= w;
    acc.mz_j *= w;
    acc.zz *= w;
    acc.xx *= w;
    acc.yy *= w;
    return acc;
}

namespace {

double string_det(const Eigen::MatrixXd& fg2, int i, int j, bool plus_variant) {
    // A^+: rows i..j-1, cols i+1..j; A^-: rows i+1..j, cols i..j-1 (1-based)
    int d = j - i;
    Eigen::MatrixXd A(d, d);
    for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) {
            int row = plus_variant ? i + p : i + p + 1;
            int col = plus_variant ? i + q + 1 : i + q;
            A(p, q) = fg2(row - 1, col - 1);
        }
    if (d == 1) return A(0, 0);
    return Eigen::PartialPivLU<Eigen::MatrixXd>(A).determinant();
}

} // namespace

SpinCorrelators spin_correlators(const ContractionTable& t, int i, int j) {
    if (i < 1 || j > t.n || i >= j)
        throw std::invalid_argument("spin correlators need 1 <= i < j <= n");
    SpinCorrelators out;
    out.mz_i = t.f(i - 1, i - 1);
    out.mz_j = t.f(j - 1, j - 1);
    out.zz = t.f(i - 1, i - 1) * t.f(j - 1, j - 1) - t.f(i - 1, j - 1) * t.f(i - 1, j - 1) +
             t.g(i - 1, j - 1) * t.g(i - 1, j - 1);

    Eigen::MatrixXd fg2 = 2.0 * (t.f + t.g);
    double det_plus = string_det(fg2, i, j, true);
    double det_minus = string_det(fg2, i, j, false);
    out.xx = 0.25 * det_plus;
    out.yy = 0.25 * det_minus;
    out.splus_sminus = 0.25 * (det_plus + det_minus);
    out.splus_splus = 0.25 * (det_plus - det_minus);
    return out;
}

PairCorrelatorSet pair_correlators(const ContractionTable& t, int i, int j) {
    SpinCorrelators c = spin_correlators(t, i, j);
    return {c.mz_i, c.mz_j, c.zz, c.xx, c.yy};
}

} // namespace dimerchain
