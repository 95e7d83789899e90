#include "isingpf/commutator.hpp"

#include <string>

namespace isingpf {

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw DimensionMismatch("commutator: operands are " +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " and " +
                                std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
    }
    return a * b - b * a;
}

ComplexMatrix nested_commutator(const ComplexMatrix& a, const ComplexMatrix& b,
                                int order) {
    if (order < 0 || order > 8) {
        throw ValidationError("nested_commutator: order must be in [0, 8], got " +
                              std::to_string(order));
    }
    ComplexMatrix out = b;
    for (int k = 0; k < order; ++k) {
        out = commutator(a, out);
    }
    return out;
}

}  // namespace isingpf
