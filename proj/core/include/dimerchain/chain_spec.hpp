#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dimerchain {

enum class Boundary { cyclic, open };

/// Sublattice label: odd sites (1,3,5,...) vs even sites (2,4,6,...).
enum class Sublattice { odd = 0, even = 1 };

inline Sublattice site_sublattice(int site_1based) {
    return (site_1based % 2 == 1) ? Sublattice::odd : Sublattice::even;
}
inline Sublattice other(Sublattice s) {
    return s == Sublattice::odd ? Sublattice::even : Sublattice::odd;
}

/// Coupling strengths along the three spin axes, in units of energy.
struct AxisTriple {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool is_zero(double tol = 0.0) const {
        return std::abs(x) <= tol && std::abs(y) <= tol && std::abs(z) <= tol;
    }
    AxisTriple scaled(double c) const { return {c * x, c * y, c * z}; }
    friend bool operator==(const AxisTriple&, const AxisTriple&) = default;
};

/// Interaction table keyed by (sublattice of the left site, separation l).
///
/// Entries are stored sparsely for positive separations only; lookups at
/// negative l use the exchange symmetries of dimer-type arrays:
///   v^o(l) = v^e(-l) for odd l,   v^s(l) = v^s(-l) for even l,
/// and in the cyclic case v^s(-l) = v^s(n-l).
class CouplingTable {
public:
    void set(Sublattice s, int separation, AxisTriple v);

    /// Coupling at signed separation l as seen from a site on sublattice s.
    AxisTriple at(Sublattice s, int separation) const;

    /// Coupling between concrete sites i and j (1-based) of an n-site chain.
    AxisTriple pair_coupling(int i, int j, int n, Boundary boundary) const;

    /// Positive separations with a stored entry, ascending.
    std::vector<int> separations() const;

    bool empty() const { return entries_.empty(); }

private:
    // key: (sublattice index, positive separation)
    std::map<std::pair<int, int>, AxisTriple> entries_;
};

/// Transverse field profile b^i, in units of energy.
class FieldProfile {
public:
    enum class Kind { uniform, alternating, per_site };

    FieldProfile() : kind_(Kind::uniform), values_{0.0} {}

    static FieldProfile uniform(double b) { return FieldProfile(Kind::uniform, {b}); }
    static FieldProfile alternating(double b_odd, double b_even) {
        return FieldProfile(Kind::alternating, {b_odd, b_even});
    }
    static FieldProfile per_site(std::vector<double> b);

    Kind kind() const { return kind_; }
    const std::vector<double>& values() const { return values_; }

    double at(int site_1based) const;

    /// True when the profile takes one value on each sublattice; if so the
    /// two values are returned through (b_odd, b_even).
    bool is_two_periodic(int n, double& b_odd, double& b_even) const;

private:
    FieldProfile(Kind k, std::vector<double> v) : kind_(k), values_(std::move(v)) {}
    Kind kind_;
    std::vector<double> values_;
};

/// Geometry, spin content, couplings and field of a dimer-type chain.
struct ChainSpec {
    int n = 0;                      ///< site count (even for dimer structure)
    double spin_odd = 0.5;          ///< s_o, spin value on odd sites
    double spin_even = 0.5;         ///< s_e, spin value on even sites
    CouplingTable couplings;
    FieldProfile field;
    Boundary boundary = Boundary::cyclic;

    double spin_at(int site_1based) const {
        return site_sublattice(site_1based) == Sublattice::odd ? spin_odd : spin_even;
    }
    double field_at(int site_1based) const { return field.at(site_1based); }

    /// Coupling v^{ij} between two distinct sites, zero when uncoupled.
    AxisTriple coupling(int i, int j) const {
        return couplings.pair_coupling(i, j, n, boundary);
    }

    /// All coupled unordered pairs i < j.
    std::vector<std::pair<int, int>> bonds() const;

    /// Total Hilbert-space dimension prod_i (2 s_i + 1).
    long hilbert_dimension() const;

    void validate() const;
};

/// Nearest-neighbor dimer chain: bonds (2i-1,2i) carry v^o, bonds (2i,2i+1)
/// carry v^e.  n = 2 degenerates to a single pair (the v^e entry is dropped,
/// as the wrap-around bond would duplicate the only pair).
ChainSpec build_dimer_chain(int n, double spin_odd, double spin_even,
                            AxisTriple v_odd, AxisTriple v_even,
                            FieldProfile field, Boundary boundary = Boundary::cyclic);

/// Two uncoupled subchains tied by a constant full-range coupling
/// v^s(l) = 2 v / n on every odd separation.  Always cyclic.
ChainSpec build_collective_pair(int n, double spin_odd, double spin_even,
                                AxisTriple v, double b_odd, double b_even);

/// Result of mapping a chain with negative x couplings to the equivalent
/// ferromagnetic one by local pi rotations about z.
struct SignMapping {
    ChainSpec spec;             ///< equivalent spec with v_x >= 0 on every bond
    std::vector<int> sign;      ///< per-site aspect ratio eps_i in {+1,-1}
    bool identity = true;       ///< no rotation was needed
};

/// Local pi rotations about z flipping s^{x,y} on selected sites so that every
/// coupled pair has v_x >= 0.  Antiferromagnetic chains give the Neel pattern
/// (+,-,+,-,...), the mixed dimer case the period-4 pattern (+,+,-,-,...).
/// Throws when the sign requirements frustrate (e.g. mixed case with odd n/2).
SignMapping map_sign_convention(const ChainSpec& spec);

} // namespace dimerchain
