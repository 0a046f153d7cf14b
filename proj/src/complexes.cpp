#include "umatch/complexes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace umatch {

void FilteredComplex::build_global_order() {
    order_.clear();
    global_of_.assign(top_dim() + 1, {});
    for (Index d = 0; d <= top_dim(); ++d)
        for (Index p = 0; p < num_cells(d); ++p) order_.push_back({d, p});
    std::stable_sort(order_.begin(), order_.end(), [&](const CellRef& a, const CellRef& b) {
        double ba = birth(a.dim, a.pos), bb = birth(b.dim, b.pos);
        if (ba != bb) return ba < bb;
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.pos < b.pos;
    });
    for (Index d = 0; d <= top_dim(); ++d) global_of_[d].assign(num_cells(d), npos);
    for (Index g = 0; g < order_.size(); ++g) global_of_[order_[g].dim][order_[g].pos] = g;
}

// ---- boundary oracle ----

namespace {

class BoundaryOracle : public MatrixOracle {
public:
    BoundaryOracle(ComplexPtr cx, Index n, const Field& f) : cx_(std::move(cx)), n_(n), f_(f) {}
    Index nrows() const override { return cx_->num_cells(n_ - 1); }
    Index ncols() const override { return cx_->num_cells(n_); }
    const Field& field() const override { return f_; }
    SparseVector row(Index i) const override {
        if (i >= nrows()) throw UsageError("row index out of range");
        return cx_->cofaces(n_ - 1, i, f_);
    }
    SparseVector column(Index j) const override {
        if (j >= ncols()) throw UsageError("column index out of range");
        return cx_->faces(n_, j, f_);
    }
    std::optional<Entry> leading_entry_shortcut(Index i) const override {
        return cx_->leading_coface(n_ - 1, i, f_);
    }

private:
    ComplexPtr cx_;
    Index n_;
    Field f_;
};

SparseVector sorted_entries(std::vector<Entry> e) {
    std::sort(e.begin(), e.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    return SparseVector::from_sorted(std::move(e));
}

}  // namespace

OraclePtr boundary_oracle(ComplexPtr cx, Index n, const Field& f) {
    if (n < 1 || n > cx->top_dim())
        throw UsageError("boundary dimension " + std::to_string(n) + " outside 1.." + std::to_string(cx->top_dim()));
    return std::make_shared<BoundaryOracle>(std::move(cx), n, f);
}

// ---- clique complex ----

CliqueComplex::CliqueComplex(std::vector<std::vector<double>> d, Index top_dim, double threshold)
    : d_(std::move(d)), top_(top_dim), threshold_(threshold) {
    const Index n = d_.size();
    for (Index i = 0; i < n; ++i) {
        if (d_[i].size() != n) throw UsageError("dissimilarity matrix is not square");
        for (Index j = 0; j < n; ++j) {
            if (!std::isfinite(d_[i][j])) throw UsageError("dissimilarity matrix has a non-finite entry");
            if (j < i && d_[i][j] != d_[j][i]) throw UsageError("dissimilarity matrix is not symmetric");
        }
    }
    if (std::isnan(threshold_)) throw UsageError("threshold is NaN");
    if (n > (1u << 20)) throw UsageError("too many vertices");

    binom_.assign(top_ + 2, std::vector<std::uint64_t>(n + 1, 0));
    for (Index v = 0; v <= n; ++v) {
        binom_[0][v] = 1;
        for (Index k = 1; k < top_ + 2 && k <= v; ++k)
            binom_[k][v] = binom_[k - 1][v - 1] + (k <= v - 1 ? binom_[k][v - 1] : 0);
    }

    verts_.assign(top_ + 1, {});
    births_.assign(top_ + 1, {});
    // lexicographic generation, then a stable sort by birth keeps lex order among ties
    std::vector<std::vector<std::uint32_t>> lv(top_ + 1);
    std::vector<std::vector<double>> lb(top_ + 1);
    for (Index v = 0; v < n; ++v)
        if (d_[v][v] <= threshold_) {
            lv[0].push_back(std::uint32_t(v));
            lb[0].push_back(d_[v][v]);
        }
    for (Index k = 1; k <= top_; ++k) {
        const Index w = k;  // vertices in a (k-1)-simplex
        for (Index s = 0; s < lb[k - 1].size(); ++s) {
            const std::uint32_t* sv = &lv[k - 1][s * w];
            for (std::uint32_t v = sv[w - 1] + 1; v < n; ++v) {
                double b = std::max(lb[k - 1][s], d_[v][v]);
                for (Index t = 0; t < w && b <= threshold_; ++t) b = std::max(b, d_[sv[t]][v]);
                if (b > threshold_) continue;
                lv[k].insert(lv[k].end(), sv, sv + w);
                lv[k].push_back(v);
                lb[k].push_back(b);
            }
        }
    }
    index_.assign(top_ + 1, {});
    for (Index k = 0; k <= top_; ++k) {
        std::vector<Index> perm(lb[k].size());
        std::iota(perm.begin(), perm.end(), 0);
        std::stable_sort(perm.begin(), perm.end(), [&](Index a, Index b) { return lb[k][a] < lb[k][b]; });
        verts_[k].reserve(lv[k].size());
        births_[k].reserve(perm.size());
        index_[k].reserve(perm.size());
        for (Index p = 0; p < perm.size(); ++p) {
            const std::uint32_t* sv = &lv[k][perm[p] * (k + 1)];
            verts_[k].insert(verts_[k].end(), sv, sv + k + 1);
            births_[k].push_back(lb[k][perm[p]]);
            index_[k].emplace(rank(sv, k + 1), p);
        }
    }
    build_global_order();
}

std::uint64_t CliqueComplex::rank(const std::uint32_t* v, Index k) const {
    std::uint64_t r = 0;
    for (Index i = 0; i < k; ++i) r += binom_[i + 1][v[i]];
    return r;
}

Index CliqueComplex::lookup(Index dim, const std::uint32_t* v) const {
    auto it = index_[dim].find(rank(v, dim + 1));
    return it == index_[dim].end() ? npos : it->second;
}

std::vector<std::int64_t> CliqueComplex::cell_id(Index dim, Index pos) const {
    const std::uint32_t* v = verts(dim, pos);
    return std::vector<std::int64_t>(v, v + dim + 1);
}

Index CliqueComplex::find_cell(Index dim, const std::vector<std::int64_t>& id) const {
    if (dim > top_ || id.size() != dim + 1) return npos;
    std::vector<std::uint32_t> v;
    for (auto x : id) {
        if (x < 0 || Index(x) >= d_.size()) return npos;
        v.push_back(std::uint32_t(x));
    }
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) return npos;
    return lookup(dim, v.data());
}

SparseVector CliqueComplex::faces(Index dim, Index pos, const Field& f) const {
    if (dim == 0) return {};
    const std::uint32_t* v = verts(dim, pos);
    std::vector<std::uint32_t> face(dim);
    std::vector<Entry> e;
    for (Index k = 0; k <= dim; ++k) {
        for (Index t = 0, u = 0; t <= dim; ++t)
            if (t != k) face[u++] = v[t];
        Index p = lookup(dim - 1, face.data());
        if (p == npos) throw InternalInconsistency("face of a simplex is missing from the complex");
        e.push_back({p, k % 2 ? f.neg(1) : 1});
    }
    return sorted_entries(std::move(e));
}

SparseVector CliqueComplex::cofaces(Index dim, Index pos, const Field& f) const {
    if (dim >= top_) return {};
    const std::uint32_t* v = verts(dim, pos);
    std::vector<std::uint32_t> co(dim + 2);
    std::vector<Entry> e;
    for (std::uint32_t x = 0, k = 0; x < d_.size(); ++x) {
        // k = number of vertices of the cell below x = position of x in the coface
        while (k <= dim && v[k] < x) ++k;
        if (k <= dim && v[k] == x) continue;
        std::copy(v, v + k, co.begin());
        co[k] = x;
        std::copy(v + k, v + dim + 1, co.begin() + k + 1);
        Index p = lookup(dim + 1, co.data());
        if (p == npos) continue;
        e.push_back({p, k % 2 ? f.neg(1) : 1});
    }
    return sorted_entries(std::move(e));
}

std::optional<Entry> CliqueComplex::leading_coface(Index dim, Index pos, const Field& f) const {
    if (dim >= top_) return std::nullopt;
    SparseVector row = cofaces(dim, pos, f);
    if (row.empty()) return std::nullopt;
    Entry lead = row[0];
    // the cell must be the last face of its first coface
    SparseVector col = faces(dim + 1, lead.index, f);
    if (col.max_index() != pos) return std::nullopt;
    return lead;
}

// ---- cubical complex ----

CubicalComplex::CubicalComplex(std::vector<Index> shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
    if (shape_.size() < 1 || shape_.size() > 3) throw UsageError("images must have 1 to 3 axes");
    Index total = 1;
    for (Index s : shape_) {
        if (s == 0) throw UsageError("image axis of length zero");
        total *= s;
    }
    if (values_.size() != total)
        throw UsageError("image has " + std::to_string(values_.size()) + " values, expected " + std::to_string(total));
    for (double x : values_)
        if (!std::isfinite(x)) throw UsageError("image has a non-finite value");

    const Index nax = shape_.size();
    Index ncell = 1;
    for (Index s : shape_) {
        kdim_.push_back(2 * s + 1);
        ncell *= 2 * s + 1;
    }
    std::vector<double> val(ncell);
    std::vector<Index> dim_of(ncell);
    for (Index lin = 0; lin < ncell; ++lin) {
        auto c = coords(lin);
        Index dim = 0;
        // pixels containing the cell: along odd axes fixed, along even axes one or two choices
        std::vector<std::vector<Index>> choice(nax);
        for (Index a = 0; a < nax; ++a) {
            if (c[a] % 2) {
                ++dim;
                choice[a] = {(c[a] - 1) / 2};
            } else {
                if (c[a] >= 2) choice[a].push_back(c[a] / 2 - 1);
                if (c[a] / 2 < shape_[a]) choice[a].push_back(c[a] / 2);
            }
        }
        double best = std::numeric_limits<double>::infinity();
        std::vector<Index> pick(nax, 0);
        for (;;) {
            Index pix = 0;
            for (Index a = 0; a < nax; ++a) pix = pix * shape_[a] + choice[a][pick[a]];
            best = std::min(best, values_[pix]);
            Index a = nax;
            while (a-- > 0) {
                if (++pick[a] < choice[a].size()) break;
                pick[a] = 0;
            }
            if (a == Index(-1)) break;
        }
        val[lin] = best;
        dim_of[lin] = dim;
    }
    cells_.assign(nax + 1, {});
    for (Index lin = 0; lin < ncell; ++lin) cells_[dim_of[lin]].push_back(lin);
    births_.assign(nax + 1, {});
    pos_of_.assign(ncell, npos);
    auto key = [&](Index lin) {
        auto c = coords(lin);
        std::vector<Index> k;
        Index ext = 0;
        for (Index a = 0; a < nax; ++a) {
            k.push_back(c[a] / 2);
            if (c[a] % 2) ext |= Index(1) << a;
        }
        k.push_back(ext);
        return k;
    };
    for (Index d = 0; d <= nax; ++d) {
        auto& cs = cells_[d];
        std::vector<std::vector<Index>> keys(ncell);
        for (Index lin : cs) keys[lin] = key(lin);
        std::sort(cs.begin(), cs.end(), [&](Index a, Index b) {
            if (val[a] != val[b]) return val[a] < val[b];
            return keys[a] < keys[b];
        });
        for (Index p = 0; p < cs.size(); ++p) {
            pos_of_[cs[p]] = p;
            births_[d].push_back(val[cs[p]]);
        }
    }
    build_global_order();
}

std::vector<Index> CubicalComplex::coords(Index lin) const {
    std::vector<Index> c(kdim_.size());
    for (Index a = kdim_.size(); a-- > 0;) {
        c[a] = lin % kdim_[a];
        lin /= kdim_[a];
    }
    return c;
}

Index CubicalComplex::linear(const std::vector<Index>& c) const {
    Index lin = 0;
    for (Index a = 0; a < kdim_.size(); ++a) lin = lin * kdim_[a] + c[a];
    return lin;
}

std::vector<std::int64_t> CubicalComplex::cell_id(Index dim, Index pos) const {
    auto c = coords(cells_.at(dim).at(pos));
    return std::vector<std::int64_t>(c.begin(), c.end());
}

Index CubicalComplex::find_cell(Index dim, const std::vector<std::int64_t>& id) const {
    if (id.size() != kdim_.size()) return npos;
    std::vector<Index> c;
    Index odd = 0;
    for (Index a = 0; a < id.size(); ++a) {
        if (id[a] < 0 || Index(id[a]) >= kdim_[a]) return npos;
        c.push_back(Index(id[a]));
        odd += id[a] % 2;
    }
    return odd == dim ? pos_of_[linear(c)] : npos;
}

SparseVector CubicalComplex::faces(Index dim, Index pos, const Field& f) const {
    auto c = coords(cells_.at(dim).at(pos));
    std::vector<Entry> e;
    Index k = 0;  // how many extended axes precede the current one
    for (Index a = 0; a < c.size(); ++a) {
        if (c[a] % 2 == 0) continue;
        Coeff up = k % 2 ? f.neg(1) : 1;
        c[a] -= 1;
        e.push_back({pos_of_[linear(c)], f.neg(up)});
        c[a] += 2;
        e.push_back({pos_of_[linear(c)], up});
        c[a] -= 1;
        ++k;
    }
    return sorted_entries(std::move(e));
}

SparseVector CubicalComplex::cofaces(Index dim, Index pos, const Field& f) const {
    auto c = coords(cells_.at(dim).at(pos));
    std::vector<Entry> e;
    Index k = 0;
    for (Index a = 0; a < c.size(); ++a) {
        if (c[a] % 2) {
            ++k;
            continue;
        }
        Coeff up = k % 2 ? f.neg(1) : 1;  // sign of the upper face along axis a
        if (c[a] >= 1) {
            c[a] -= 1;  // the cell is the upper face of this coface
            e.push_back({pos_of_[linear(c)], up});
            c[a] += 1;
        }
        if (c[a] + 1 < kdim_[a]) {
            c[a] += 1;  // the cell is the lower face
            e.push_back({pos_of_[linear(c)], f.neg(up)});
            c[a] -= 1;
        }
    }
    return sorted_entries(std::move(e));
}

// ---- metrics and input ----

Metric parse_metric(const std::string& s) {
    if (s == "euclidean") return Metric::Euclidean;
    if (s == "torus") return Metric::Torus;
    throw UsageError("unknown metric '" + s + "' (expected euclidean or torus)");
}

std::vector<std::vector<double>> distance_matrix(const std::vector<std::vector<double>>& pts, Metric m) {
    const Index n = pts.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (Index i = 0; i < n; ++i) {
        if (pts[i].size() != pts[0].size()) throw UsageError("points have different dimensions");
        for (Index j = 0; j < i; ++j) {
            double s = 0;
            for (Index a = 0; a < pts[i].size(); ++a) {
                double dx = std::abs(pts[i][a] - pts[j][a]);
                if (m == Metric::Torus) dx = std::min({dx, std::abs(dx - 1.0), std::abs(dx + 1.0)});
                s += dx * dx;
            }
            d[i][j] = d[j][i] = std::sqrt(s);
        }
    }
    return d;
}

std::vector<std::vector<double>> parse_csv_numbers(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::replace(line.begin(), line.end(), ';', ' ');
        std::istringstream ss(line);
        std::vector<double> row;
        std::string tok;
        while (ss >> tok) {
            try {
                std::size_t used = 0;
                double x = std::stod(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                row.push_back(x);
            } catch (const std::exception&) {
                throw UsageError("line " + std::to_string(lineno) + ": '" + tok + "' is not a number");
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

ComplexInput read_complex_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::string first;
    std::streampos start = in.tellg();
    std::getline(in, first);
    std::istringstream fs(first);
    std::string word;
    fs >> word;
    ComplexInput out{};
    if (word == "dims") {
        out.kind = ComplexInput::Kind::Image;
        long long s;
        while (fs >> s) {
            if (s <= 0) throw UsageError("image dimensions must be positive");
            out.shape.push_back(Index(s));
        }
        if (out.shape.size() < 2 || out.shape.size() > 3) throw UsageError("image header must be 'dims d1 d2 [d3]'");
        for (auto& r : parse_csv_numbers(in)) out.values.insert(out.values.end(), r.begin(), r.end());
        return out;
    }
    in.clear();
    in.seekg(start);
    out.rows = parse_csv_numbers(in);
    const Index n = out.rows.size();
    // rows of lengths 1, 2, ..., n: lower triangle with or without the zero diagonal
    bool staircase = n >= 2;
    for (Index i = 0; i < n && staircase; ++i) staircase = out.rows[i].size() == i + 1;
    bool square = n >= 2;
    for (Index i = 0; i < n && square; ++i) {
        square = out.rows[i].size() == n && out.rows[i][i] == 0;
        for (Index j = 0; j < i && square; ++j) square = out.rows[i][j] == out.rows[j][i];
    }
    if (staircase) {
        bool with_diag = true;
        for (Index i = 0; i < n; ++i) with_diag = with_diag && out.rows[i][i] == 0;
        Index np = with_diag ? n : n + 1, shift = with_diag ? 0 : 1;
        std::vector<std::vector<double>> d(np, std::vector<double>(np, 0.0));
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < i + shift; ++j) d[i + shift][j] = d[j][i + shift] = out.rows[i][j];
        out.kind = ComplexInput::Kind::Distances;
        out.rows = std::move(d);
    } else if (square) {
        out.kind = ComplexInput::Kind::Distances;
    } else {
        out.kind = ComplexInput::Kind::Points;
        for (const auto& r : out.rows)
            if (r.size() != out.rows[0].size()) throw UsageError("point rows have different lengths");
    }
    return out;
}

}  // namespace umatch
