#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace ats {

/// Dense real matrix, row-major. Entries must be finite; constructors throw
/// std::invalid_argument on NaN/Inf or on a size/data mismatch.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix zeros(std::size_t rows, std::size_t cols);
    static DenseMatrix ones(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const double* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }
    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    DenseMatrix transposed() const;
    DenseMatrix operator*(const DenseMatrix& rhs) const;
    std::vector<double> operator*(const std::vector<double>& v) const;

    /// H^T H, formed directly without an intermediate transpose copy.
    DenseMatrix gram() const;
    /// H^T v for a vector v of length rows().
    std::vector<double> transpose_times(const std::vector<double>& v) const;

    double frobenius_norm() const;
    double trace() const;
    double max_abs() const;

    bool operator==(const DenseMatrix& other) const = default;

    std::string shape_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;

    void check_finite() const;
};

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);

double norm2(const std::vector<double>& v);

/// CSV matrix format: one row per line, comma-separated decimal literals, no
/// header. Throws std::runtime_error with a line number on ragged or
/// malformed input.
DenseMatrix read_csv_matrix(std::istream& in, const std::string& name = "<stream>");
DenseMatrix read_csv_matrix_file(const std::string& path);
void write_csv_matrix(std::ostream& out, const DenseMatrix& m);
void write_csv_matrix_file(const std::string& path, const DenseMatrix& m);

}  // namespace ats
