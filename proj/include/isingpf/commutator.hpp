#pragma once

#include "isingpf/linalg.hpp"

namespace isingpf {

// [a, b] = a b - b a.  Throws DimensionMismatch unless both are square with
// equal dimension.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// [a, [a, ... [a, b]]] with `order` applications; order 0 returns b.
// Orders above 8 are rejected as a guard against runaway call sites; the
// conjugation series used in tests builds longer chains by iterating
// commutator() directly.
ComplexMatrix nested_commutator(const ComplexMatrix& a, const ComplexMatrix& b,
                                int order);

}  // namespace isingpf
