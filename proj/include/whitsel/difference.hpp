#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "whitsel/banded.hpp"
#include "whitsel/errors.hpp"

namespace whitsel {

/**
 * Order-d finite-difference operator D on length-n series, held as its row
 * stencil: every row r applies the same alternating-sign binomial stencil to
 * x[r..r+d]. Its null space is the polynomials of degree < d, which is what
 * a large penalty drives the smoother toward.
 */
class DifferenceOperator {
public:
    DifferenceOperator(int order, std::size_t n)
        : order_(order), n_(n), coefficients_(detail::difference_stencil(order)) {
        if (n < static_cast<std::size_t>(order) + 1) {
            throw DimensionMismatch("difference operator needs n >= order + 1, got n = " +
                                    std::to_string(n));
        }
    }

    int order() const noexcept { return order_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t rows() const noexcept { return n_ - static_cast<std::size_t>(order_); }
    std::span<const double> coefficients() const noexcept { return coefficients_; }

private:
    int order_;
    std::size_t n_;
    std::vector<double> coefficients_;
};

/// D x: length n - order vector of order-d differences.
inline std::vector<double> difference_apply(const DifferenceOperator& op,
                                            std::span<const double> x) {
    if (x.size() != op.n()) {
        throw DimensionMismatch("difference_apply: vector length " + std::to_string(x.size()) +
                                " != operator n " + std::to_string(op.n()));
    }
    const auto c = op.coefficients();
    const std::size_t d = c.size() - 1;
    std::vector<double> out(op.rows());
    for (std::size_t r = 0; r < out.size(); ++r) {
        double acc = 0.0;
        for (std::size_t k = 0; k <= d; ++k) acc += c[k] * x[r + k];
        out[r] = acc;
    }
    return out;
}

} // namespace whitsel
