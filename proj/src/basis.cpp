#include "dicke3/basis.hpp"

#include "dicke3/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace dicke3 {

namespace {

// Sort key matching the enumeration order: nu ascending, n1 and n2 descending.
bool precedes(const BasisState& a, const BasisState& b) {
    if (a.nu != b.nu) return a.nu < b.nu;
    if (a.n1 != b.n1) return a.n1 > b.n1;
    return a.n2 > b.n2;
}

std::size_t atomic_index(int Na, int n1, int n2) {
    const auto m = static_cast<std::size_t>(Na - n1);
    return m * (m + 1) / 2 + (m - static_cast<std::size_t>(n2));
}

}  // namespace

int BasisState::n(int level) const {
    switch (level) {
        case 1: return n1;
        case 2: return n2;
        case 3: return n3;
        default: throw std::out_of_range("atomic level must be 1, 2 or 3");
    }
}

std::string to_string(const BasisState& s) {
    return "|" + std::to_string(s.nu) + ";" + std::to_string(s.n1) + "," + std::to_string(s.n2) + "," +
           std::to_string(s.n3) + ">";
}

BasisSet::BasisSet(BasisShape shape, std::vector<BasisState> states)
    : shape_(shape), states_(std::make_shared<const std::vector<BasisState>>(std::move(states))) {}

bool BasisSet::contains(const BasisState& s) const noexcept {
    if (s.nu < 0 || s.nu > shape_.nmax || s.n1 < 0 || s.n2 < 0 || s.n3 < 0) return false;
    if (s.n1 + s.n2 + s.n3 != shape_.Na) return false;
    if (shape_.frozen_level != 0 && s.n(shape_.frozen_level) != shape_.n_frozen) return false;
    return true;
}

std::size_t BasisSet::index_of(const BasisState& s) const {
    if (!contains(s)) throw std::out_of_range("state " + to_string(s) + " is not in the basis");
    if (is_full()) {
        return static_cast<std::size_t>(s.nu) * atomic_dim() + atomic_index(shape_.Na, s.n1, s.n2);
    }
    auto it = std::lower_bound(states_->begin(), states_->end(), s, precedes);
    return static_cast<std::size_t>(it - states_->begin());
}

std::size_t default_max_dimension() {
    if (const char* env = std::getenv("DICKE3_MAX_DIM")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 10000;
}

BasisSet enumerate_basis(int Na, int nmax, std::size_t max_dim) {
    if (Na < 1) throw InvalidConfig("atom count Na must be at least 1");
    if (nmax < 0) throw InvalidConfig("photon cutoff nmax must be non-negative");

    const auto atomic = static_cast<std::size_t>(Na + 1) * static_cast<std::size_t>(Na + 2) / 2;
    const auto dim = static_cast<std::size_t>(nmax + 1) * atomic;
    if (dim > max_dim) {
        throw DimensionLimit("basis dimension " + std::to_string(dim) + " exceeds the limit " +
                             std::to_string(max_dim) + " (set DICKE3_MAX_DIM to raise it)");
    }

    std::vector<BasisState> states;
    states.reserve(dim);
    for (int nu = 0; nu <= nmax; ++nu)
        for (int n1 = Na; n1 >= 0; --n1)
            for (int n2 = Na - n1; n2 >= 0; --n2) states.push_back({nu, n1, n2, Na - n1 - n2});

    return BasisSet({Na, nmax, 0, 0}, std::move(states));
}

BasisSet restrict_frozen_level(const BasisSet& parent, int level, int n_level) {
    if (!parent.is_full()) throw InvalidConfig("can only freeze a level of a full basis");
    if (level < 1 || level > 3) throw InvalidConfig("frozen level must be 1, 2 or 3");
    if (n_level < 0 || n_level > parent.Na()) throw InvalidConfig("frozen occupation must lie in [0, Na]");

    std::vector<BasisState> states;
    for (const auto& s : parent.states())
        if (s.n(level) == n_level) states.push_back(s);
    return BasisSet({parent.Na(), parent.nmax(), level, n_level}, std::move(states));
}

}  // namespace dicke3
