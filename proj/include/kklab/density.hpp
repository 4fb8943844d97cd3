#pragma once

#include <kklab/graph.hpp>
#include <kklab/numeric.hpp>

#include <vector>

namespace kklab {

/// e(J[witness]) / |witness|, kept unreduced together with its witness.
struct DensityValue {
    std::size_t edges = 0;
    std::size_t vertices = 1;
    std::vector<Vertex> witness;

    Rational value() const
    {
        Rational r(static_cast<unsigned long>(edges), static_cast<unsigned long>(vertices));
        r.canonicalize();
        return r;
    }
};

/// d(J) = e_J / v_J. Throws PreconditionError on the empty graph.
Rational density(const Graph & g);

/// m(J), the maximum of e(J[U])/|U| over nonempty U, via parametric
/// min-cut over the finite set of candidate densities a/b with b <= v_J.
DensityValue max_density(const Graph & g);

/// Same quantity by enumerating all 2^v - 1 vertex subsets (v <= 20).
DensityValue max_density_enumerate(const Graph & g);

} // namespace kklab
