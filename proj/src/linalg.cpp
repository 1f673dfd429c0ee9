#include "amplitile/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace amplitile {

Matrix identity(int n) {
    Matrix I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

Matrix multiply(const Matrix& A, const Matrix& B) {
    if (A.cols != B.rows) throw std::invalid_argument("multiply: shape mismatch");
    Matrix C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int l = 0; l < A.cols; ++l) {
            const Q& x = A(i, l);
            if (sgn(x) == 0) continue;
            for (int j = 0; j < B.cols; ++j) C(i, j) += x * B(l, j);
        }
    return C;
}

Matrix transpose(const Matrix& A) {
    Matrix T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
    return T;
}

Q det(Matrix M) {
    if (M.rows != M.cols) throw std::invalid_argument("det: not square");
    int n = M.rows;
    Q d = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && sgn(M(p, c)) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (int j = c; j < n; ++j) std::swap(M(p, j), M(c, j));
            d = -d;
        }
        d *= M(c, c);
        for (int r = c + 1; r < n; ++r) {
            if (sgn(M(r, c)) == 0) continue;
            Q f = M(r, c) / M(c, c);
            for (int j = c; j < n; ++j) M(r, j) -= f * M(c, j);
        }
    }
    return d;
}

Matrix rref(Matrix M) {
    int r = 0;
    for (int c = 0; c < M.cols && r < M.rows; ++c) {
        int p = r;
        while (p < M.rows && sgn(M(p, c)) == 0) ++p;
        if (p == M.rows) continue;
        for (int j = 0; j < M.cols; ++j) std::swap(M(p, j), M(r, j));
        Q inv = 1 / M(r, c);
        for (int j = 0; j < M.cols; ++j) M(r, j) *= inv;
        for (int i = 0; i < M.rows; ++i) {
            if (i == r || sgn(M(i, c)) == 0) continue;
            Q f = M(i, c);
            for (int j = 0; j < M.cols; ++j) M(i, j) -= f * M(r, j);
        }
        ++r;
    }
    Matrix R(r, M.cols);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < M.cols; ++j) R(i, j) = M(i, j);
    return R;
}

int rank(Matrix M) { return rref(std::move(M)).rows; }

bool rowspan_equal(const Matrix& A, const Matrix& B) {
    if (A.cols != B.cols) return false;
    return rref(A) == rref(B);
}

Q minor_cols(const Matrix& M, const std::vector<int>& cols) {
    int k = M.rows;
    if (int(cols.size()) != k) throw std::invalid_argument("minor: wrong column count");
    Matrix S(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) S(i, j) = M(i, cols[j]);
    return det(S);
}

Q plucker(const Matrix& M, const std::vector<int>& cols) {
    for (int c : cols)
        if (c < 0 || c >= M.cols) throw std::out_of_range("plucker: bad index");
    return minor_cols(M, cols);
}

Matrix vandermonde(const std::vector<Q>& nodes, int width) {
    for (size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i - 1] < nodes[i])) throw std::invalid_argument("vandermonde: nodes must be strictly increasing");
    Matrix Z(int(nodes.size()), width);
    for (int i = 0; i < Z.rows; ++i) {
        Q p = 1;
        for (int j = 0; j < width; ++j) {
            Z(i, j) = p;
            p *= nodes[i];
        }
    }
    return Z;
}

Matrix vandermonde_Z(int n, int k) {
    std::vector<Q> t;
    for (int i = 1; i <= n; ++i) t.emplace_back(i);
    return vandermonde(t, k + 4);
}

bool all_maximal_minors_positive(const Matrix& Z) {
    int n = Z.rows, m = Z.cols;
    if (n < m) return false;
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    Matrix Zt = transpose(Z);
    while (true) {
        if (sgn(minor_cols(Zt, idx)) <= 0) return false;
        int i = m - 1;
        while (i >= 0 && idx[i] == n - m + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
    return true;
}

Matrix amplituhedron_map(const Matrix& C, const Matrix& Z) {
    Matrix Y = multiply(C, Z);
    if (rank(Y) != Y.rows) throw std::runtime_error("amplituhedron_map: rank drop");
    return Y;
}

Q twistor(const Matrix& Y, const Matrix& Z, const std::vector<int>& rowsZ) {
    int k = Y.rows, m = Z.cols;
    if (int(rowsZ.size()) + k != m) throw std::invalid_argument("twistor: wrong index count");
    Matrix S(m, m);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < m; ++j) S(i, j) = Y(i, j);
    for (size_t r = 0; r < rowsZ.size(); ++r)
        for (int j = 0; j < m; ++j) S(k + int(r), j) = Z(rowsZ[r], j);
    return det(S);
}

Q twistor_cauchy_binet(const Matrix& C, const Matrix& Z, const std::vector<int>& rowsZ) {
    // det[CZ; Z_I] = sum over k-subsets J of <J>_C * det[Z_J; Z_I]
    int k = C.rows, n = C.cols;
    Q total = 0;
    if (k == 0) {
        Matrix S(Z.cols, Z.cols);
        for (size_t r = 0; r < rowsZ.size(); ++r)
            for (int j = 0; j < Z.cols; ++j) S(int(r), j) = Z(rowsZ[r], j);
        return det(S);
    }
    std::vector<int> J(k);
    std::iota(J.begin(), J.end(), 0);
    while (true) {
        Q pc = minor_cols(C, J);
        if (sgn(pc) != 0) {
            Matrix S(Z.cols, Z.cols);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < Z.cols; ++j) S(i, j) = Z(J[i], j);
            for (size_t r = 0; r < rowsZ.size(); ++r)
                for (int j = 0; j < Z.cols; ++j) S(k + int(r), j) = Z(rowsZ[r], j);
            total += pc * det(S);
        }
        int i = k - 1;
        while (i >= 0 && J[i] == n - k + i) --i;
        if (i < 0) break;
        ++J[i];
        for (int j = i + 1; j < k; ++j) J[j] = J[j - 1] + 1;
    }
    return total;
}

Matrix cyc(const Matrix& M) {
    int k = M.rows, n = M.cols;
    Matrix R(k, n);
    Q s = (k % 2 == 1) ? Q(1) : Q(-1);  // (-1)^{k-1}
    for (int i = 0; i < k; ++i) {
        R(i, 0) = s * M(i, n - 1);
        for (int j = 1; j < n; ++j) R(i, j) = M(i, j - 1);
    }
    return R;
}

Matrix refl(const Matrix& M) {
    int k = M.rows, n = M.cols;
    Matrix R(k, n);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) R(i, j) = M(i, n - 1 - j);
    if (k > 0 && (k * (k - 1) / 2) % 2 == 1)
        for (int j = 0; j < n; ++j) R(0, j) = -R(0, j);
    return R;
}

Matrix insert_zero_columns(const Matrix& M, const std::vector<int>& positions) {
    int n = M.cols + int(positions.size());
    std::vector<bool> zero(n, false);
    for (int p : positions) {
        if (p < 0 || p >= n) throw std::out_of_range("insert_zero_columns");
        zero[p] = true;
    }
    Matrix R(M.rows, n);
    int src = 0;
    for (int j = 0; j < n; ++j) {
        if (zero[j]) continue;
        for (int i = 0; i < M.rows; ++i) R(i, j) = M(i, src);
        ++src;
    }
    return R;
}

std::string to_string(const Matrix& M) {
    std::ostringstream os;
    for (int i = 0; i < M.rows; ++i) {
        os << "[";
        for (int j = 0; j < M.cols; ++j) os << (j ? " " : "") << M(i, j).get_str();
        os << "]\n";
    }
    return os.str();
}

static uint64_t splitmix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng::Rng(uint64_t seed, uint64_t stream) : seed_(splitmix(seed) ^ splitmix(stream * 0x632be59bd9b4e019ULL + 1)) {}

uint64_t Rng::next() { return splitmix(seed_ + 0x9e3779b97f4a7c15ULL * (++ctr_)); }

int64_t Rng::uniform_int(int64_t lo, int64_t hi) {
    uint64_t span = uint64_t(hi - lo) + 1;
    return lo + int64_t(next() % span);
}

Q Rng::positive_rational(int64_t bound) {
    Q q(long(uniform_int(1, bound)), long(uniform_int(1, bound)));
    q.canonicalize();
    return q;
}

Q Rng::rational(int64_t bound) {
    Q q(long(uniform_int(-bound, bound)), long(uniform_int(1, bound)));
    q.canonicalize();
    return q;
}

Rng Rng::split(uint64_t stream) const { return Rng(seed_ ^ splitmix(ctr_), stream); }

}  // namespace amplitile
