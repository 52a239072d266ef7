#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace dicke3 {

/// One product state |nu; n1, n2, n3> of the field mode and the symmetric
/// three-level atomic ensemble.
struct BasisState {
    int nu{0};
    int n1{0};
    int n2{0};
    int n3{0};

    /// Occupation of atomic level 1, 2 or 3.
    int n(int level) const;

    friend bool operator==(const BasisState&, const BasisState&) = default;
};

std::string to_string(const BasisState& s);

/// Describes which basis a matrix or state vector lives on. Two bases with
/// equal shapes enumerate identical state lists.
struct BasisShape {
    int Na{0};
    int nmax{0};
    int frozen_level{0};  ///< 0 for the full basis
    int n_frozen{0};

    friend bool operator==(const BasisShape&, const BasisShape&) = default;
};

/// Immutable, deterministically ordered product basis. Ordering is photon
/// number major, then n1 descending, then n2 descending (n3 implied).
/// Copies share the underlying state list.
class BasisSet {
public:
    int Na() const noexcept { return shape_.Na; }
    int nmax() const noexcept { return shape_.nmax; }
    const BasisShape& shape() const noexcept { return shape_; }
    bool is_full() const noexcept { return shape_.frozen_level == 0; }

    std::size_t size() const noexcept { return states_->size(); }
    /// Number of atomic configurations per photon block.
    std::size_t atomic_dim() const noexcept { return size() / static_cast<std::size_t>(shape_.nmax + 1); }

    const std::vector<BasisState>& states() const noexcept { return *states_; }
    const BasisState& operator[](std::size_t i) const { return (*states_)[i]; }

    bool contains(const BasisState& s) const noexcept;
    /// Position of `s`; throws std::out_of_range when `s` is not in the basis.
    std::size_t index_of(const BasisState& s) const;

    friend bool operator==(const BasisSet& a, const BasisSet& b) noexcept { return a.shape_ == b.shape_; }

private:
    friend BasisSet enumerate_basis(int Na, int nmax, std::size_t max_dim);
    friend BasisSet restrict_frozen_level(const BasisSet& parent, int level, int n_level);

    BasisSet(BasisShape shape, std::vector<BasisState> states);

    BasisShape shape_;
    std::shared_ptr<const std::vector<BasisState>> states_;
};

/// Largest basis dimension accepted by enumerate_basis when no explicit bound
/// is passed. Reads DICKE3_MAX_DIM, falling back to 10000.
std::size_t default_max_dimension();

/// Full basis with n1+n2+n3 = Na and nu <= nmax.
/// Throws InvalidConfig for Na < 1 or nmax < 0, DimensionLimit when the
/// dimension exceeds `max_dim`.
BasisSet enumerate_basis(int Na, int nmax, std::size_t max_dim = default_max_dimension());

/// Sub-basis of `parent` where atomic level `level` holds exactly `n_level`
/// atoms. Ordering is inherited from the parent.
BasisSet restrict_frozen_level(const BasisSet& parent, int level, int n_level);

/// Free function form of BasisSet::index_of.
inline std::size_t index_of(const BasisSet& b, const BasisState& s) { return b.index_of(s); }

}  // namespace dicke3
