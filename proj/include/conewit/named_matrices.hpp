#ifndef CONEWIT_NAMED_MATRICES_HPP
#define CONEWIT_NAMED_MATRICES_HPP

#include "conewit/matcore.hpp"

namespace conewit {

/// Jarre's 4x4 witness for the complex elliptope: <z|W|z> <= 6 on the torus.
CMat jarre_witness();

/// H(x): unit diagonal, +-ix phases on the first 3x3 block, x elsewhere.
/// PSD iff |x| <= 1/sqrt(3); <W, H(x)> = 12x.
CMat h_family(double x);

/// Horn's 5x5 matrix: copositive but not SPN.
CMat horn_matrix();

/// Circulant pentagon matrix: 2cos(pi/5) diagonal, ones on the 5-cycle.
/// Doubly nonnegative of rank 3, not completely positive.
CMat circulant_pentagon();

/// Agler et al.'s rank-2 extremal element of the C4-sparse PSD cone.
CMat agler_extremal_y();

/// Lookup by name: "jarre", "horn", "circulantA", "aglerY", "h:<x>".
CMat named_matrix(const std::string& name);

} // namespace conewit

#endif
