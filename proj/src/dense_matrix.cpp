#include "ats/dense_matrix.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ats {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw std::invalid_argument("DenseMatrix: data length " + std::to_string(data_.size()) +
                                    " does not match shape " + shape_string());
    }
    check_finite();
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw std::invalid_argument("DenseMatrix: ragged initializer list");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
    check_finite();
}

void DenseMatrix::check_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("DenseMatrix: non-finite entry in " + shape_string() +
                                        " matrix");
        }
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::zeros(std::size_t rows, std::size_t cols) {
    return DenseMatrix(rows, cols);
}

DenseMatrix DenseMatrix::ones(std::size_t rows, std::size_t cols) {
    return DenseMatrix(rows, cols, std::vector<double>(rows * cols, 1.0));
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
    if (cols_ != rhs.rows_) {
        throw std::invalid_argument("matrix product shape mismatch: " + shape_string() + " * " +
                                    rhs.shape_string());
    }
    DenseMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const double a = (*this)(i, k);
            if (a == 0.0) continue;
            const double* brow = rhs.row_ptr(k);
            double* orow = out.data_.data() + i * out.cols_;
            for (std::size_t j = 0; j < rhs.cols_; ++j) orow[j] += a * brow[j];
        }
    }
    return out;
}

std::vector<double> DenseMatrix::operator*(const std::vector<double>& v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("matrix-vector shape mismatch: " + shape_string() +
                                    " * vector[" + std::to_string(v.size()) + "]");
    }
    std::vector<double> out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* row = row_ptr(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * v[j];
        out[i] = acc;
    }
    return out;
}

DenseMatrix DenseMatrix::gram() const {
    DenseMatrix g(cols_, cols_);
    for (std::size_t k = 0; k < rows_; ++k) {
        const double* row = row_ptr(k);
        for (std::size_t i = 0; i < cols_; ++i) {
            const double a = row[i];
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < cols_; ++j) g(i, j) += a * row[j];
        }
    }
    return g;
}

std::vector<double> DenseMatrix::transpose_times(const std::vector<double>& v) const {
    if (v.size() != rows_) {
        throw std::invalid_argument("transpose-vector shape mismatch: " + shape_string() +
                                    "^T * vector[" + std::to_string(v.size()) + "]");
    }
    std::vector<double> out(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double a = v[i];
        if (a == 0.0) continue;
        const double* row = row_ptr(i);
        for (std::size_t j = 0; j < cols_; ++j) out[j] += a * row[j];
    }
    return out;
}

double DenseMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

double DenseMatrix::trace() const {
    const std::size_t n = std::min(rows_, cols_);
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
    return t;
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
}

std::string DenseMatrix::shape_string() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("matrix difference shape mismatch: " + a.shape_string() +
                                    " - " + b.shape_string());
    }
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) out.data()[i] = a.data()[i] - b.data()[i];
    return out;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
    DenseMatrix out = a;
    for (double& v : out.data()) v *= s;
    return out;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

DenseMatrix read_csv_matrix(std::istream& in, const std::string& name) {
    std::vector<double> data;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // tolerate trailing \r and skip blank lines
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::size_t row_cols = 0;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            std::size_t pos = 0;
            double v = 0.0;
            try {
                v = std::stod(cell, &pos);
            } catch (const std::exception&) {
                throw std::runtime_error(name + ":" + std::to_string(lineno) +
                                         ": not a number: '" + cell + "'");
            }
            if (cell.find_first_not_of(" \t", pos) != std::string::npos) {
                throw std::runtime_error(name + ":" + std::to_string(lineno) +
                                         ": trailing garbage in cell '" + cell + "'");
            }
            data.push_back(v);
            ++row_cols;
        }
        if (rows == 0) {
            cols = row_cols;
        } else if (row_cols != cols) {
            throw std::runtime_error(name + ":" + std::to_string(lineno) + ": ragged row (" +
                                     std::to_string(row_cols) + " fields, expected " +
                                     std::to_string(cols) + ")");
        }
        ++rows;
    }
    if (rows == 0) throw std::runtime_error(name + ": empty matrix file");
    return DenseMatrix(rows, cols, std::move(data));
}

DenseMatrix read_csv_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_csv_matrix(in, path);
}

void write_csv_matrix(std::ostream& out, const DenseMatrix& m) {
    out << std::setprecision(17);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << m(i, j);
        }
        out << '\n';
    }
}

void write_csv_matrix_file(const std::string& path, const DenseMatrix& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_csv_matrix(out, m);
}

}  // namespace ats
