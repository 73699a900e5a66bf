#include "dimerchain/dense_solver.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace dimerchain {

namespace {

std::vector<int> site_dims(const ChainSpec& spec) {
    std::vector<int> dims(spec.n);
    for (int i = 1; i <= spec.n; ++i)
        dims[i - 1] = static_cast<int>(std::lround(2.0 * spec.spin_at(i) + 1.0));
    return dims;
}

long checked_dimension(const ChainSpec& spec, long dim_cap) {
    long dim = spec.hilbert_dimension();
    if (dim > dim_cap)
        throw std::domain_error("Hilbert dimension " + std::to_string(dim) +
                                " exceeds the brute-force cap " + std::to_string(dim_cap));
    return dim;
}

} // namespace

DenseOperator dense_hamiltonian(const ChainSpec& spec, long dim_cap) {
    spec.validate();
    long dim = checked_dimension(spec, dim_cap);
    ProductBasis basis(site_dims(spec));

    std::vector<SpinMatrices> ops;
    ops.reserve(spec.n);
    for (int i = 1; i <= spec.n; ++i) ops.emplace_back(spec.spin_at(i));

    auto bonds = spec.bonds();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(dim) * (2 * bonds.size() + 1) / 2);

    for (long col = 0; col < dim; ++col) {
        double diag = 0.0;
        for (int i = 1; i <= spec.n; ++i)
            diag += spec.field_at(i) * ops[i - 1].mz(basis.digit(col, i));

        for (auto [i, j] : bonds) {
            AxisTriple v = spec.coupling(i, j);
            const SpinMatrices& si = ops[i - 1];
            const SpinMatrices& sj = ops[j - 1];
            int ai = basis.digit(col, i);
            int aj = basis.digit(col, j);
            double mi = si.mz(ai);
            double mj = sj.mz(aj);

            diag += -v.z * mi * mj;

            // v_x sx sx + v_y sy sy = v_+ (s+ s- + s- s+) + v_- (s+ s+ + s- s-)
            double vp = 0.25 * (v.x + v.y);
            double vm = 0.25 * (v.x - v.y);
            // raising at i acts on decreasing basis index (descending m order)
            bool can_up_i = ai > 0, can_dn_i = ai < si.dim - 1;
            bool can_up_j = aj > 0, can_dn_j = aj < sj.dim - 1;
            if (vp != 0.0 && can_up_i && can_dn_j) {
                double amp = -vp * si.sp(ai - 1, ai) * sj.sm(aj + 1, aj);
                long row = basis.with_digit(basis.with_digit(col, i, ai - 1), j, aj + 1);
                trip.emplace_back(static_cast<int>(row), static_cast<int>(col), amp);
            }
            if (vp != 0.0 && can_dn_i && can_up_j) {
                double amp = -vp * si.sm(ai + 1, ai) * sj.sp(aj - 1, aj);
                long row = basis.with_digit(basis.with_digit(col, i, ai + 1), j, aj - 1);
                trip.emplace_back(static_cast<int>(row), static_cast<int>(col), amp);
            }
            if (vm != 0.0 && can_up_i && can_up_j) {
                double amp = -vm * si.sp(ai - 1, ai) * sj.sp(aj - 1, aj);
                long row = basis.with_digit(basis.with_digit(col, i, ai - 1), j, aj - 1);
                trip.emplace_back(static_cast<int>(row), static_cast<int>(col), amp);
            }
            if (vm != 0.0 && can_dn_i && can_dn_j) {
                double amp = -vm * si.sm(ai + 1, ai) * sj.sm(aj + 1, aj);
                long row = basis.with_digit(basis.with_digit(col, i, ai + 1), j, aj + 1);
                trip.emplace_back(static_cast<int>(row), static_cast<int>(col), amp);
            }
        }
        if (diag != 0.0)
            trip.emplace_back(static_cast<int>(col), static_cast<int>(col), diag);
    }

    DenseOperator out{Eigen::SparseMatrix<double>(dim, dim), basis};
    out.matrix.setFromTriplets(trip.begin(), trip.end());
    return out;
}

Eigen::VectorXd parity_diagonal(const ChainSpec& spec, long dim_cap) {
    long dim = checked_dimension(spec, dim_cap);
    ProductBasis basis(site_dims(spec));
    Eigen::VectorXd p(dim);
    for (long idx = 0; idx < dim; ++idx) {
        long q = 0; // sum of (m_i + s_i), always a nonnegative integer
        for (int i = 1; i <= spec.n; ++i) {
            double s = spec.spin_at(i);
            int a = basis.digit(idx, i);
            q += std::lround((s - a) + s);
        }
        p(idx) = (q % 2 == 0) ? 1.0 : -1.0;
    }
    return p;
}

Eigen::VectorXd product_state(const ChainSpec& spec, const std::vector<double>& angles) {
    if (static_cast<int>(angles.size()) != spec.n)
        throw std::invalid_argument("angle list length must equal n");
    ProductBasis basis(site_dims(spec));
    std::vector<Eigen::VectorXd> local;
    local.reserve(spec.n);
    for (int i = 1; i <= spec.n; ++i)
        local.push_back(SpinMatrices(spec.spin_at(i)).tilted_down(angles[i - 1]));

    Eigen::VectorXd psi(basis.total_dim);
    for (long idx = 0; idx < basis.total_dim; ++idx) {
        double amp = 1.0;
        for (int i = 1; i <= spec.n; ++i) amp *= local[i - 1](basis.digit(idx, i));
        psi(idx) = amp;
    }
    return psi;
}

double eigen_residual(const DenseOperator& H, const Eigen::VectorXd& psi) {
    double norm2 = psi.squaredNorm();
    Eigen::VectorXd hpsi = H.matrix * psi;
    double energy = psi.dot(hpsi) / norm2;
    return (hpsi - energy * psi).norm() / std::sqrt(norm2);
}

SectorEigen sector_ground_states_dense(const ChainSpec& spec, long dim_cap) {
    DenseOperator H = dense_hamiltonian(spec, dim_cap);
    Eigen::VectorXd par = parity_diagonal(spec, dim_cap);
    long dim = H.dimension();

    SectorEigen out;
    for (int sector : {+1, -1}) {
        std::vector<long> idx;
        for (long a = 0; a < dim; ++a)
            if ((par(a) > 0) == (sector > 0)) idx.push_back(a);
        Eigen::MatrixXd block(idx.size(), idx.size());
        for (size_t c = 0; c < idx.size(); ++c) {
            Eigen::VectorXd col = Eigen::VectorXd::Zero(dim);
            col(idx[c]) = 1.0;
            Eigen::VectorXd hcol = H.matrix * col;
            for (size_t r = 0; r < idx.size(); ++r) block(r, c) = hcol(idx[r]);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
        Eigen::VectorXd ground = Eigen::VectorXd::Zero(dim);
        for (size_t r = 0; r < idx.size(); ++r) ground(idx[r]) = es.eigenvectors()(r, 0);
        if (sector > 0) {
            out.energy_plus = es.eigenvalues()(0);
            out.state_plus = ground;
        } else {
            out.energy_minus = es.eigenvalues()(0);
            out.state_minus = ground;
        }
    }
    return out;
}

Eigen::VectorXd full_spectrum(const DenseOperator& H) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.dense(), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double lowest_eigenvalue(const Eigen::SparseMatrix<double>& H, int max_iter, double tol,
                         unsigned seed) {
    long dim = H.rows();
    if (dim == 1) return H.coeff(0, 0);
    max_iter = static_cast<int>(std::min<long>(max_iter, dim));

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Eigen::VectorXd v(dim);
    for (long i = 0; i < dim; ++i) v(i) = gauss(rng);
    v.normalize();

    std::vector<Eigen::VectorXd> vs{v};
    std::vector<double> alpha, beta;
    double prev = std::numeric_limits<double>::max();

    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXd w = H * vs.back();
        alpha.push_back(vs.back().dot(w));
        w -= alpha.back() * vs.back();
        if (vs.size() > 1) w -= beta.back() * vs[vs.size() - 2];
        for (const auto& u : vs) w -= u.dot(w) * u; // full reorthogonalization
        double b = w.norm();

        Eigen::Index m = static_cast<Eigen::Index>(alpha.size());
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            T(i, i) = alpha[i];
            if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
        double low = es.eigenvalues()(0);
        if (std::abs(low - prev) < tol * std::max(1.0, std::abs(low)) || b < 1e-13) return low;
        prev = low;

        beta.push_back(b);
        vs.push_back(w / b);
    }
    return prev;
}

Eigen::MatrixXd two_site_rdm(const Eigen::VectorXd& psi, const ProductBasis& basis,
                             int i, int j) {
    if (i == j) throw std::invalid_argument("two_site_rdm needs distinct sites");
    int di = basis.dims[i - 1];
    int dj = basis.dims[j - 1];
    Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(di * dj, di * dj);
    // accumulate over the complementary configuration by scanning all basis
    // states of one (i,j) digit pair and re-addressing the others
    for (long idx = 0; idx < basis.total_dim; ++idx) {
        int ai = basis.digit(idx, i);
        int aj = basis.digit(idx, j);
        if (ai != 0 || aj != 0) continue; // enumerate complements once
        for (int a = 0; a < di; ++a)
            for (int b = 0; b < dj; ++b) {
                long row_idx = basis.with_digit(basis.with_digit(idx, i, a), j, b);
                double amp_r = psi(row_idx);
                if (amp_r == 0.0) continue;
                for (int c = 0; c < di; ++c)
                    for (int d = 0; d < dj; ++d) {
                        long col_idx = basis.with_digit(basis.with_digit(idx, i, c), j, d);
                        rho(a * dj + b, c * dj + d) += amp_r * psi(col_idx);
                    }
            }
    }
    return rho;
}

Eigen::MatrixXd one_site_rdm(const Eigen::VectorXd& psi, const ProductBasis& basis, int i) {
    int di = basis.dims[i - 1];
    Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(di, di);
    for (long idx = 0; idx < basis.total_dim; ++idx) {
        if (basis.digit(idx, i) != 0) continue;
        for (int a = 0; a < di; ++a) {
            double amp_r = psi(basis.with_digit(idx, i, a));
            if (amp_r == 0.0) continue;
            for (int c = 0; c < di; ++c) rho(a, c) += amp_r * psi(basis.with_digit(idx, i, c));
        }
    }
    return rho;
}

PairCorrelators pair_correlators_dense(const Eigen::VectorXd& psi, const ProductBasis& basis,
                                       int i, int j) {
    if (basis.dims[i - 1] != 2 || basis.dims[j - 1] != 2)
        throw std::invalid_argument("pair correlators require spin-1/2 sites");
    Eigen::MatrixXd rho = two_site_rdm(psi, basis, i, j);
    // basis order (m_i, m_j) descending: uu, ud, du, dd
    PairCorrelators c;
    c.mz_i = 0.5 * (rho(0, 0) + rho(1, 1) - rho(2, 2) - rho(3, 3));
    c.mz_j = 0.5 * (rho(0, 0) - rho(1, 1) + rho(2, 2) - rho(3, 3));
    c.zz = 0.25 * (rho(0, 0) - rho(1, 1) - rho(2, 2) + rho(3, 3));
    c.xx = 0.25 * (2.0 * rho(1, 2) + 2.0 * rho(0, 3));
    c.yy = 0.25 * (2.0 * rho(1, 2) - 2.0 * rho(0, 3));
    return c;
}

double magnetization_dense(const Eigen::VectorXd& psi, const ProductBasis& basis, int i,
                           const ChainSpec& spec) {
    double m = 0.0;
    double s = spec.spin_at(i);
    for (long idx = 0; idx < basis.total_dim; ++idx) {
        double amp = psi(idx);
        if (amp == 0.0) continue;
        m += amp * amp * (s - basis.digit(idx, i));
    }
    return m;
}

} // namespace dimerchain
