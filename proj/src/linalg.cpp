#include "sgeom/linalg.hpp"

namespace sgeom {

std::size_t rank(RationalMatrix m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0)
            ++p;
        if (p == m.rows())
            continue;
        m.swap_rows(p, r);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            Rational f = m(i, c) / m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

std::optional<RationalMatrix> inverse(const RationalMatrix &m) {
    const std::size_t n = m.rows();
    if (m.cols() != n)
        return std::nullopt;
    RationalMatrix a = m, inv(n, n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        inv(i, i) = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0)
            ++p;
        if (p == n)
            return std::nullopt;
        a.swap_rows(p, c);
        inv.swap_rows(p, c);
        Rational s = 1 / a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) *= s;
            inv(c, j) *= s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0)
                continue;
            Rational f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

RationalMatrix multiply(const RationalMatrix &a, const RationalMatrix &b) {
    RationalMatrix out(a.rows(), b.cols(), Rational(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (a(i, k) != 0)
                for (std::size_t j = 0; j < b.cols(); ++j)
                    out(i, j) += a(i, k) * b(k, j);
    return out;
}

SuperMatrix identity_matrix(const ChartPtr &chart, std::size_t n) {
    SuperMatrix m(n, n, SuperElement(chart));
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = SuperElement::constant(chart, 1);
    return m;
}

SuperMatrix multiply(const SuperMatrix &a, const SuperMatrix &b) {
    const ChartPtr &chart = a.rows() && a.cols() ? a(0, 0).chart() : b(0, 0).chart();
    SuperMatrix out(a.rows(), b.cols(), SuperElement(chart));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (!a(i, k).is_zero())
                for (std::size_t j = 0; j < b.cols(); ++j)
                    out(i, j) += a(i, k) * b(k, j);
    return out;
}

SuperMatrix inverse(const SuperMatrix &m) {
    const std::size_t n = m.rows();
    if (m.cols() != n)
        throw std::invalid_argument("inverse: matrix must be square");
    if (n == 0)
        return m;
    const ChartPtr chart = m(0, 0).chart();
    SuperMatrix a = m, inv = identity_matrix(chart, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && !is_unit(a(p, c)))
            ++p;
        if (p == n)
            throw NotAUnit("inverse: no unit pivot in column " + std::to_string(c));
        a.swap_rows(p, c);
        inv.swap_rows(p, c);
        SuperElement s = invert(a(c, c));
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) = s * a(c, j);
            inv(c, j) = s * inv(c, j);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c).is_zero())
                continue;
            SuperElement f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

namespace {

SuperElement laplace(const SuperMatrix &m, std::vector<std::size_t> &cols, std::size_t row) {
    const ChartPtr &chart = m(0, 0).chart();
    if (row == m.rows())
        return SuperElement::constant(chart, 1);
    SuperElement det(chart);
    for (std::size_t k = 0; k < cols.size(); ++k) {
        std::size_t c = cols[k];
        SuperElement entry = m(row, c).body();
        if (entry.is_zero())
            continue;
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
        SuperElement minor = laplace(m, cols, row + 1);
        cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
        if (k & 1)
            det -= entry * minor;
        else
            det += entry * minor;
    }
    return det;
}

} // namespace

SuperElement body_determinant(const SuperMatrix &m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw std::invalid_argument("determinant: matrix must be square and nonempty");
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        cols.push_back(j);
    return laplace(m, cols, 0);
}

} // namespace sgeom
