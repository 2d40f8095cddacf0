#pragma once

#include <cassert>
#include <complex>
#include <cstddef>
#include <vector>

namespace qroots {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t r, std::size_t c) {
        assert(r < dim_ && c < dim_);
        return data_[r * dim_ + c];
    }
    const Complex& operator()(std::size_t r, std::size_t c) const {
        assert(r < dim_ && c < dim_);
        return data_[r * dim_ + c];
    }

    CVector apply(const CVector& v) const {
        assert(v.size() == dim_);
        CVector out(dim_, 0.0);
        for (std::size_t r = 0; r < dim_; ++r) {
            Complex acc = 0.0;
            for (std::size_t c = 0; c < dim_; ++c) acc += data_[r * dim_ + c] * v[c];
            out[r] = acc;
        }
        return out;
    }

    ComplexMatrix operator*(const ComplexMatrix& rhs) const {
        assert(dim_ == rhs.dim_);
        ComplexMatrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t k = 0; k < dim_; ++k) {
                const Complex a = data_[r * dim_ + k];
                if (a == Complex{0.0, 0.0}) continue;
                for (std::size_t c = 0; c < dim_; ++c) out(r, c) += a * rhs(k, c);
            }
        return out;
    }

    ComplexMatrix scaled(Complex s) const {
        ComplexMatrix out(dim_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * s;
        return out;
    }

    double max_abs_diff(const ComplexMatrix& rhs) const {
        assert(dim_ == rhs.dim_);
        double worst = 0.0;
        for (std::size_t i = 0; i < data_.size(); ++i)
            worst = std::max(worst, std::abs(data_[i] - rhs.data_[i]));
        return worst;
    }

  private:
    std::size_t dim_ = 0;
    CVector data_;
};

inline double norm_squared(const CVector& v) {
    double s = 0.0;
    for (const auto& a : v) s += std::norm(a);
    return s;
}

}  // namespace qroots
