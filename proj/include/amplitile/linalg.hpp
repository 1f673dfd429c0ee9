#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace amplitile {

using Q = mpq_class;

struct Matrix {
    int rows = 0, cols = 0;
    std::vector<Q> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}
    Q& operator()(int i, int j) { return a[size_t(i) * cols + j]; }
    const Q& operator()(int i, int j) const { return a[size_t(i) * cols + j]; }
    bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

Matrix identity(int n);
Matrix multiply(const Matrix& A, const Matrix& B);
Matrix transpose(const Matrix& A);
Q det(Matrix M);
int rank(Matrix M);
// reduced row echelon form with zero rows dropped
Matrix rref(Matrix M);
bool rowspan_equal(const Matrix& A, const Matrix& B);

// Columns are addressed by position 0..cols-1 here; marker-indexed helpers live in plabic/promote.
Q minor_cols(const Matrix& M, const std::vector<int>& cols);
// plucker with signed handling of unsorted / repeated column lists
Q plucker(const Matrix& M, const std::vector<int>& cols);

// Vandermonde positive matrix: row i = (1, t_i, ..., t_i^{m-1})
Matrix vandermonde(const std::vector<Q>& nodes, int width);
Matrix vandermonde_Z(int n, int k);
bool all_maximal_minors_positive(const Matrix& Z);

// Y = C Z
Matrix amplituhedron_map(const Matrix& C, const Matrix& Z);
// <<i1 i2 i3 i4>> with 0-based row indices of Z
Q twistor(const Matrix& Y, const Matrix& Z, const std::vector<int>& rowsZ);
Q twistor_cauchy_binet(const Matrix& C, const Matrix& Z, const std::vector<int>& rowsZ);

// cyc and refl on a k x n matrix, columns in positional order
Matrix cyc(const Matrix& M);
Matrix refl(const Matrix& M);
// insert zero columns at the given final positions (0-based, relative to the output)
Matrix insert_zero_columns(const Matrix& M, const std::vector<int>& positions);

std::string to_string(const Matrix& M);

// deterministic counter-based generator (splitmix64 over seed+counter)
class Rng {
public:
    explicit Rng(uint64_t seed = 0, uint64_t stream = 0);
    uint64_t next();
    int64_t uniform_int(int64_t lo, int64_t hi);
    // positive rational p/q with 1<=p,q<=bound
    Q positive_rational(int64_t bound = 9);
    Q rational(int64_t bound = 9);
    Rng split(uint64_t stream) const;

private:
    uint64_t seed_, ctr_ = 0;
};

}  // namespace amplitile
