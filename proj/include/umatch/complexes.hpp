#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "umatch/matrix.hpp"

namespace umatch {

struct CellRef {
    Index dim;
    Index pos;  // position in the filtration order of its dimension
    bool operator==(const CellRef&) const = default;
};

// A finite filtered cell complex whose cells of each dimension are listed in
// filtration order. Boundary matrices are exposed lazily through oracles.
class FilteredComplex {
public:
    virtual ~FilteredComplex() = default;

    virtual Index top_dim() const = 0;
    virtual Index num_cells(Index dim) const = 0;
    virtual double birth(Index dim, Index pos) const = 0;
    // Vertex tuple (simplices) or doubled grid coordinates (cubes).
    virtual std::vector<std::int64_t> cell_id(Index dim, Index pos) const = 0;
    // Column pos of the boundary matrix from dim to dim-1.
    virtual SparseVector faces(Index dim, Index pos, const Field& f) const = 0;
    // Row pos of the boundary matrix from dim+1 to dim.
    virtual SparseVector cofaces(Index dim, Index pos, const Field& f) const = 0;
    // The first coface of cell pos, if the cell is also the last face of that coface.
    virtual std::optional<Entry> leading_coface(Index, Index, const Field&) const { return std::nullopt; }

    // Whole-complex order: by (birth, dim, position within dim).
    Index num_cells_total() const { return order_.size(); }
    const std::vector<CellRef>& global_order() const { return order_; }
    Index global_index(Index dim, Index pos) const { return global_of_.at(dim).at(pos); }
    // Cell position of a vertex tuple or coordinate id, npos if absent.
    virtual Index find_cell(Index dim, const std::vector<std::int64_t>& id) const = 0;

protected:
    // Derived classes call this once their cells are sorted.
    void build_global_order();

private:
    std::vector<CellRef> order_;
    std::vector<std::vector<Index>> global_of_;
};

using ComplexPtr = std::shared_ptr<const FilteredComplex>;

// Boundary matrix from dim n to n-1, rows and columns in filtration order.
OraclePtr boundary_oracle(ComplexPtr cx, Index n, const Field& f);

// Vietoris-Rips complex of a dissimilarity matrix: a simplex enters at the
// largest entry among its vertices (diagonal entries are vertex births).
class CliqueComplex : public FilteredComplex {
public:
    CliqueComplex(std::vector<std::vector<double>> dissimilarity, Index top_dim,
                  double threshold = std::numeric_limits<double>::infinity());

    Index top_dim() const override { return top_; }
    Index num_cells(Index dim) const override { return dim <= top_ ? births_[dim].size() : 0; }
    double birth(Index dim, Index pos) const override { return births_.at(dim).at(pos); }
    std::vector<std::int64_t> cell_id(Index dim, Index pos) const override;
    SparseVector faces(Index dim, Index pos, const Field& f) const override;
    SparseVector cofaces(Index dim, Index pos, const Field& f) const override;
    std::optional<Entry> leading_coface(Index dim, Index pos, const Field& f) const override;
    Index find_cell(Index dim, const std::vector<std::int64_t>& id) const override;

    Index num_vertices() const { return d_.size(); }
    double dissimilarity(Index u, Index v) const { return d_[u][v]; }

private:
    const std::uint32_t* verts(Index dim, Index pos) const { return &verts_[dim][pos * (dim + 1)]; }
    std::uint64_t rank(const std::uint32_t* v, Index k) const;  // combinatorial number system
    Index lookup(Index dim, const std::uint32_t* v) const;

    std::vector<std::vector<double>> d_;
    Index top_;
    double threshold_;
    std::vector<std::vector<std::uint32_t>> verts_;
    std::vector<std::vector<double>> births_;
    std::vector<std::unordered_map<std::uint64_t, Index>> index_;
    std::vector<std::vector<std::uint64_t>> binom_;
};

// Cubical complex of a 2D or 3D pixel array. Pixels are the top cells and
// every other cell enters with the smallest pixel containing it.
class CubicalComplex : public FilteredComplex {
public:
    // shape = (d1, d2[, d3]); values row-major (last axis fastest).
    CubicalComplex(std::vector<Index> shape, std::vector<double> values);

    Index top_dim() const override { return shape_.size(); }
    Index num_cells(Index dim) const override { return dim < cells_.size() ? cells_[dim].size() : 0; }
    double birth(Index dim, Index pos) const override { return births_.at(dim).at(pos); }
    std::vector<std::int64_t> cell_id(Index dim, Index pos) const override;
    SparseVector faces(Index dim, Index pos, const Field& f) const override;
    SparseVector cofaces(Index dim, Index pos, const Field& f) const override;
    Index find_cell(Index dim, const std::vector<std::int64_t>& id) const override;

    const std::vector<Index>& shape() const { return shape_; }

private:
    std::vector<Index> coords(Index lin) const;
    Index linear(const std::vector<Index>& c) const;

    std::vector<Index> shape_, kdim_;  // pixel shape and doubled-grid shape
    std::vector<double> values_;
    std::vector<std::vector<Index>> cells_;  // per dim: doubled-grid linear indices in order
    std::vector<std::vector<double>> births_;
    std::vector<Index> pos_of_;  // doubled-grid linear index -> position in its dim
};

enum class Metric { Euclidean, Torus };
Metric parse_metric(const std::string& s);

// Pairwise distances; torus uses min over shifts in {-1,0,1}^d of the unit cube.
std::vector<std::vector<double>> distance_matrix(const std::vector<std::vector<double>>& points, Metric m);

// Input files. A CSV that is square, symmetric and zero on the diagonal, or
// lower triangular, is read as a distance matrix; anything else as points.
struct ComplexInput {
    enum class Kind { Points, Distances, Image } kind;
    std::vector<std::vector<double>> rows;  // points or distances
    std::vector<Index> shape;               // image only
    std::vector<double> values;             // image only
};
ComplexInput read_complex_input(const std::string& path);
std::vector<std::vector<double>> parse_csv_numbers(std::istream& in);

}  // namespace umatch
