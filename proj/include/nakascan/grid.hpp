#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nakascan {

/// Dense row-major 2-D grid of doubles. Rows index the axial direction,
/// columns index lateral scan lines.
class Grid2D {
public:
    Grid2D() = default;
    Grid2D(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("Grid2D: dimensions must be >= 1");
    }
    Grid2D(std::size_t rows, std::size_t cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("Grid2D: dimensions must be >= 1");
        if (data_.size() != rows * cols)
            throw std::invalid_argument("Grid2D: data size does not match dimensions");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool same_shape(const Grid2D& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

} // namespace nakascan
