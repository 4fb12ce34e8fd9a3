#pragma once

#include <vector>

#include "toric/lattice.hpp"

namespace toric::detail {

/// Calls fn(x) for every lattice point of the box lo <= x <= hi (componentwise).
template <class Fn>
void for_each_lattice_point(const std::vector<Integer>& lo, const std::vector<Integer>& hi, Fn&& fn)
{
    const std::size_t n = lo.size();
    for (std::size_t i = 0; i < n; ++i)
        if (lo[i] > hi[i])
            return;
    LatticeVector x(lo);
    for (;;) {
        fn(static_cast<const LatticeVector&>(x));
        std::size_t pos = 0;
        while (pos < n) {
            if (x[pos] < hi[pos]) {
                x[pos] += 1;
                break;
            }
            x[pos] = lo[pos];
            ++pos;
        }
        if (pos == n)
            return;
    }
}

/// Bounding box of the origin and the given rational points.
inline void bounding_box(const std::vector<RationalVector>& points, std::size_t rank, std::vector<Integer>& lo,
                         std::vector<Integer>& hi)
{
    lo.assign(rank, Integer(0));
    hi.assign(rank, Integer(0));
    for (const auto& p : points)
        for (std::size_t i = 0; i < rank; ++i) {
            Integer f = floor_of(p[i]);
            Integer c = ceil_of(p[i]);
            if (f < lo[i])
                lo[i] = f;
            if (c > hi[i])
                hi[i] = c;
        }
}

}  // namespace toric::detail
