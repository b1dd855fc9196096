#pragma once

#include "folded/surface.hpp"

#include <cstdint>
#include <utility>

namespace folded {

// Deterministic uniform doubles from a seeded engine (the standard
// distributions are implementation-defined; this is reproducible).
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return (double)(next_u64() >> 11) * (1.0 / 9007199254740992.0); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) { // inclusive
        return lo + (int)(next_u64() % (std::uint64_t)(hi - lo + 1));
    }
};

// Fan of triangular faces around one boundary vertex of a regular polygon.
RawSurface fan_surface(int faces);

// Axis-parallel staircase of alternating horizontal and vertical rectangles.
RawSurface staircase_surface(int steps);

// Randomly folded strip: convex quadrilateral cells whose dual is a path,
// folded by random dihedral angles about slightly slanted chords.
RawSurface random_folded_surface(std::uint64_t seed, int faces);

// Axis-parallel randomly sized staircase (random step extents, still axis
// aligned; used by the half-space and exactness suites).
RawSurface random_axis_parallel_surface(std::uint64_t seed, int faces);

// Random planar convex polygon as a single-face surface.
RawSurface random_convex_surface(std::uint64_t seed, int verts);

// Parameters for the rotated zigzag pair: two parallel plates at heights one
// and zero joined by a slanted rectangle, the partner surface being the same
// shape rotated ninety degrees about the central unit cube.
struct ZigzagParams {
    double topLen = 2.0 / 3.0;
    double bottomLen = 4.0 / 3.0;
    double halfWidth = 5.0 / 6.0;
    int rotation = -1; // +1 or -1 quarter turn
    bool zflip = false;
};

std::pair<RawSurface, RawSurface> zigzag_pair(const ZigzagParams& p);

// The counter-example fixture: frozen zigzag pair whose embedded properties
// (unit central cube, boundary distance one, forced points) are asserted by
// the test suite.
std::pair<RawSurface, RawSurface> appendix_b_pair();

// Non-axis-parallel three-face surface with a slanted raised band; the
// geometry where geodesics and sequence-following matched curves genuinely
// differ under the Euclidean metric.
RawSurface slanted_bump_surface();

} // namespace folded
