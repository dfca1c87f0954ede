#pragma once

#include <vector>

#include "modvertex/fp.hpp"

namespace modvertex {

/// Dense matrix over F_p.  Weight spaces at desk scale are tiny, so plain
/// Gaussian elimination is all the artifact needs.
class FpMatrix {
  public:
    FpMatrix(size_t rows, size_t cols, Prime p) : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Prime prime() const { return p_; }
    uint32_t& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    uint32_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
    void set(size_t r, size_t c, Fp v) { a_[r * cols_ + c] = v.residue(); }

    /// Row echelon form in place; returns the pivot columns.
    std::vector<size_t> echelonize() {
        std::vector<size_t> pivots;
        const uint64_t p = p_.value();
        size_t row = 0;
        for (size_t col = 0; col < cols_ && row < rows_; ++col) {
            size_t sel = row;
            while (sel < rows_ && at(sel, col) == 0) ++sel;
            if (sel == rows_) continue;
            if (sel != row)
                for (size_t c = 0; c < cols_; ++c) std::swap(at(row, c), at(sel, c));
            uint64_t inv = Fp(at(row, col), p_).inv().residue();
            for (size_t c = col; c < cols_; ++c) at(row, c) = static_cast<uint32_t>(at(row, c) * inv % p);
            for (size_t r = 0; r < rows_; ++r) {
                if (r == row || at(r, col) == 0) continue;
                uint64_t f = at(r, col);
                for (size_t c = col; c < cols_; ++c)
                    at(r, c) = static_cast<uint32_t>((at(r, c) + (p - f) * at(row, c)) % p);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    size_t rank() const {
        FpMatrix tmp = *this;
        return tmp.echelonize().size();
    }

    /// Basis of the null space {x : A x = 0}.
    std::vector<std::vector<Fp>> kernel_basis() const {
        FpMatrix tmp = *this;
        auto pivots = tmp.echelonize();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<std::vector<Fp>> out;
        for (size_t free_col = 0; free_col < cols_; ++free_col) {
            if (is_pivot[free_col]) continue;
            std::vector<Fp> v(cols_, Fp::zero(p_));
            v[free_col] = Fp::one(p_);
            for (size_t r = 0; r < pivots.size(); ++r)
                v[pivots[r]] = -Fp(tmp.at(r, free_col), p_);
            out.push_back(std::move(v));
        }
        return out;
    }

  private:
    size_t rows_, cols_;
    Prime p_;
    std::vector<uint32_t> a_;
};

} // namespace modvertex
