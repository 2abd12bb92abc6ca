// Exact sparse linear algebra over the rationals.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hcx {

using Scalar = mpq_class;

struct Entry {
    int idx;
    Scalar val;
};

inline bool operator==(const Entry& a, const Entry& b) { return a.idx == b.idx && a.val == b.val; }

// Sorted by idx, no stored zeros.
using SparseVec = std::vector<Entry>;

SparseVec vec_axpy(const SparseVec& y, const Scalar& a, const SparseVec& x);
SparseVec vec_scale(const SparseVec& x, const Scalar& a);
Scalar vec_get(const SparseVec& x, int idx);
SparseVec vec_from_pairs(std::vector<std::pair<int, Scalar>> terms);

class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols);
    SparseMatrix(int rows, int cols, std::vector<SparseVec> columns);

    static SparseMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const SparseVec& col(int j) const { return cols_data_[j]; }
    const std::vector<SparseVec>& columns() const { return cols_data_; }
    std::size_t nnz() const;
    bool is_zero() const;
    Scalar at(int i, int j) const;

    SparseMatrix transpose() const;
    SparseVec apply(const SparseVec& v) const;
    SparseMatrix operator*(const SparseMatrix& o) const;
    SparseMatrix operator+(const SparseMatrix& o) const;
    SparseMatrix operator-(const SparseMatrix& o) const;
    SparseMatrix scaled(const Scalar& a) const;
    bool operator==(const SparseMatrix& o) const;
    bool operator!=(const SparseMatrix& o) const { return !(*this == o); }

    // Rows [r0, r0+nr) and columns [c0, c0+nc).
    SparseMatrix block(int r0, int nr, int c0, int nc) const;
    SparseMatrix select_cols(const std::vector<int>& js) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<SparseVec> cols_data_;
};

SparseMatrix vstack(const std::vector<SparseMatrix>& ms);
SparseMatrix hstack(const std::vector<SparseMatrix>& ms);

// Accumulates entries (duplicates are summed) and produces a SparseMatrix.
class MatrixBuilder {
public:
    MatrixBuilder(int rows, int cols);
    void add(int i, int j, const Scalar& v);
    void add(int i, int j, long v);
    void place(const SparseMatrix& blk, int r0, int c0, const Scalar& factor = 1);
    SparseMatrix build();
    int rows() const { return rows_; }
    int cols() const { return cols_; }

private:
    int rows_, cols_;
    std::vector<std::vector<std::pair<int, Scalar>>> acc_;
};

// Linearly independent vectors in reduced form: vector i has a 1 at keys[i]
// and 0 at every other key.
struct SubspaceBasis {
    int ambient = 0;
    std::vector<SparseVec> vecs;
    std::vector<int> keys;

    int dim() const { return static_cast<int>(vecs.size()); }
    SparseMatrix inclusion() const;
    // Coordinates of v in this basis. Throws if v is not in the span.
    SparseVec coords(const SparseVec& v) const;
    std::optional<SparseVec> try_coords(const SparseVec& v) const;
    // Applies coords to every column of m (m maps into the ambient space).
    SparseMatrix coords_matrix(const SparseMatrix& m) const;
    std::optional<SparseMatrix> try_coords_matrix(const SparseMatrix& m) const;

    static SubspaceBasis full(int n);
    static SubspaceBasis coordinate(int n, const std::vector<int>& idx);
};

class NotInSubspace : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CompositionNotZero : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotACycleImage : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

int rank(const SparseMatrix& m);
SubspaceBasis kernel_basis(const SparseMatrix& m);
SubspaceBasis image_basis(const SparseMatrix& m);
// Reduced basis of the span of the given vectors.
SubspaceBasis span_basis(int ambient, const std::vector<SparseVec>& vs);
SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b);

std::optional<SparseVec> solve(const SparseMatrix& a, const SparseVec& b);
// Solves a*X = B column by column; nullopt if any column is inconsistent.
std::optional<SparseMatrix> solve_many(const SparseMatrix& a, const SparseMatrix& b);

struct Homology {
    int dim = 0;
    int ambient = 0;
    std::vector<SparseVec> reps;
    // Reduces a cycle to its class coordinates. Throws NotACycleImage if the
    // vector is not a cycle.
    SparseVec project(const SparseVec& z) const;
    SparseMatrix projection_matrix(const SparseMatrix& cycles) const;

    // internals: tracked echelon of boundaries + reps
    struct Pivot {
        SparseVec vec;
        SparseVec tag;
    };
    std::vector<int> lead_index;  // ambient index -> pivot slot or -1
    std::vector<Pivot> pivots;
    SubspaceBasis cycles;
    SparseMatrix d_out;
};

Homology homology(const SparseMatrix& d_in, const SparseMatrix& d_out);
// Homology where the cycle space is already known (d_out may be empty).
Homology homology_from(const SubspaceBasis& cycles, const SparseMatrix& d_in);
int homology_dim(const SparseMatrix& d_in, const SparseMatrix& d_out);

SparseMatrix induced_on_homology(const SparseMatrix& f, const Homology& src, const Homology& tgt);

std::string to_string(const Scalar& s);

}  // namespace hcx
