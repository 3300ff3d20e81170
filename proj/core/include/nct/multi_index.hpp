#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nct {

/// 4-component multi-index; indexes both the derivations delta_1..delta_4 and
/// the covariables xi_1..xi_4.
struct MultiIndex {
    std::array<int, 4> e{0, 0, 0, 0};

    MultiIndex() = default;
    MultiIndex(int e1, int e2, int e3, int e4) : e{e1, e2, e3, e4} {
        for (int v : e)
            if (v < 0) throw std::invalid_argument("MultiIndex: negative exponent");
    }

    static MultiIndex unit(int direction) {
        MultiIndex m;
        if (direction < 1 || direction > 4)
            throw std::invalid_argument("MultiIndex: direction must be 1..4");
        m.e[direction - 1] = 1;
        return m;
    }

    int order() const { return e[0] + e[1] + e[2] + e[3]; }

    long factorial() const {
        long f = 1;
        for (int v : e)
            for (int k = 2; k <= v; ++k) f *= k;
        return f;
    }

    int operator[](int i) const { return e[i]; }

    MultiIndex operator+(const MultiIndex& o) const {
        return {e[0] + o.e[0], e[1] + o.e[1], e[2] + o.e[2], e[3] + o.e[3]};
    }

    auto operator<=>(const MultiIndex&) const = default;

    bool is_zero() const { return order() == 0; }
};

/// All multi-indices of a given order, in lexicographic order.
std::vector<MultiIndex> multi_indices_of_order(int order);

std::string subscript_string(const MultiIndex& m);  // "1122" style digit run

}  // namespace nct
