#include "pmono/gf2.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>
#include <utility>

#include "pmono/errors.hpp"

namespace pmono::gf2 {

namespace {

std::size_t word_count(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

void require(bool ok, const char* what) {
    if (!ok) throw UsageError(what);
}

}  // namespace

// ---------------------------------------------------------------- Gf2Vec

Gf2Vec::Gf2Vec(std::size_t n) : n_(n), words_(word_count(n), 0) {}

Gf2Vec Gf2Vec::unit(std::size_t n, std::size_t i) {
    require(i < n, "gf2: unit vector index out of range");
    Gf2Vec v(n);
    v.set(i, true);
    return v;
}

Gf2Vec Gf2Vec::ones(std::size_t n) {
    Gf2Vec v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, true);
    return v;
}

Gf2Vec Gf2Vec::from_string(std::string_view bits) {
    std::vector<bool> parsed;
    for (char c : bits) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c != '0' && c != '1') throw UsageError("gf2: bit strings may only contain 0 and 1");
        parsed.push_back(c == '1');
    }
    Gf2Vec v(parsed.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) v.set(i, parsed[i]);
    return v;
}

Gf2Vec Gf2Vec::from_word(Word bits, std::size_t n) {
    require(n <= kWordBits, "gf2: from_word needs n <= 64");
    Gf2Vec v(n);
    if (n > 0) v.words_[0] = n == kWordBits ? bits : (bits & ((Word{1} << n) - 1));
    return v;
}

void Gf2Vec::set(std::size_t i, bool value) {
    const Word mask = Word{1} << (i % kWordBits);
    if (value)
        words_[i / kWordBits] |= mask;
    else
        words_[i / kWordBits] &= ~mask;
}

bool Gf2Vec::is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

std::size_t Gf2Vec::weight() const {
    std::size_t total = 0;
    for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

bool Gf2Vec::dot(const Gf2Vec& other) const {
    require(n_ == other.n_, "gf2: dot product of vectors with different lengths");
    Word acc = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) acc ^= words_[k] & other.words_[k];
    return std::popcount(acc) & 1;
}

Gf2Vec Gf2Vec::slice(std::size_t offset, std::size_t len) const {
    require(offset + len <= n_, "gf2: slice out of range");
    Gf2Vec out(len);
    for (std::size_t i = 0; i < len; ++i)
        if (get(offset + i)) out.set(i, true);
    return out;
}

void Gf2Vec::assign(std::size_t offset, const Gf2Vec& part) {
    require(offset + part.size() <= n_, "gf2: assign out of range");
    for (std::size_t i = 0; i < part.size(); ++i) set(offset + i, part.get(i));
}

Word Gf2Vec::to_word() const {
    require(n_ <= kWordBits, "gf2: to_word needs size <= 64");
    return words_.empty() ? 0 : words_[0];
}

Gf2Vec& Gf2Vec::operator^=(const Gf2Vec& other) {
    require(n_ == other.n_, "gf2: adding vectors with different lengths");
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
    return *this;
}

bool Gf2Vec::lex_less(const Gf2Vec& other) const {
    require(n_ == other.n_, "gf2: comparing vectors with different lengths");
    for (std::size_t i = 0; i < n_; ++i) {
        const bool a = get(i);
        const bool b = other.get(i);
        if (a != b) return !a;
    }
    return false;
}

std::string Gf2Vec::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

Gf2Vec concat(std::span<const Gf2Vec> parts) {
    std::size_t n = 0;
    for (const auto& p : parts) n += p.size();
    Gf2Vec out(n);
    std::size_t offset = 0;
    for (const auto& p : parts) {
        out.assign(offset, p);
        offset += p.size();
    }
    return out;
}

// ---------------------------------------------------------------- Gf2Mat

Gf2Mat::Gf2Mat(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows, Gf2Vec(cols)) {}

Gf2Mat Gf2Mat::identity(std::size_t n) {
    Gf2Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

Gf2Mat Gf2Mat::from_rows(std::vector<Gf2Vec> rows, std::size_t cols) {
    for (const auto& r : rows) require(r.size() == cols, "gf2: row length does not match column count");
    Gf2Mat m;
    m.rows_ = rows.size();
    m.cols_ = cols;
    m.data_ = std::move(rows);
    return m;
}

Gf2Mat Gf2Mat::from_columns(std::span<const Gf2Vec> cols, std::size_t rows) {
    Gf2Mat m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        require(cols[c].size() == rows, "gf2: column length does not match row count");
        for (std::size_t r = 0; r < rows; ++r)
            if (cols[c].get(r)) m.set(r, c, true);
    }
    return m;
}

Gf2Mat Gf2Mat::from_strings(std::span<const std::string> rows) {
    std::vector<Gf2Vec> parsed;
    parsed.reserve(rows.size());
    for (const auto& r : rows) parsed.push_back(Gf2Vec::from_string(r));
    const std::size_t cols = parsed.empty() ? 0 : parsed.front().size();
    return from_rows(std::move(parsed), cols);
}

Gf2Mat Gf2Mat::permutation(std::span<const std::size_t> perm) {
    const std::size_t n = perm.size();
    Gf2Mat m(n, n);
    std::vector<bool> hit(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        require(perm[i] < n && !hit[perm[i]], "gf2: not a permutation");
        hit[perm[i]] = true;
        m.set(perm[i], i, true);
    }
    return m;
}

Gf2Vec Gf2Mat::column(std::size_t c) const {
    require(c < cols_, "gf2: column index out of range");
    Gf2Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        if (get(r, c)) v.set(r, true);
    return v;
}

Gf2Mat Gf2Mat::transpose() const {
    Gf2Mat t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) t.set(c, r, true);
    return t;
}

bool Gf2Mat::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Gf2Vec& r) { return r.is_zero(); });
}

bool Gf2Mat::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        if (data_[r] != Gf2Vec::unit(cols_, r)) return false;
    return true;
}

Gf2Mat Gf2Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    require(r0 + nr <= rows_ && c0 + nc <= cols_, "gf2: block out of range");
    Gf2Mat b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r) b.data_[r] = data_[r0 + r].slice(c0, nc);
    return b;
}

void Gf2Mat::set_block(std::size_t r0, std::size_t c0, const Gf2Mat& b) {
    require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, "gf2: set_block out of range");
    for (std::size_t r = 0; r < b.rows_; ++r) data_[r0 + r].assign(c0, b.data_[r]);
}

std::string Gf2Mat::to_string() const {
    std::ostringstream out;
    for (std::size_t r = 0; r < rows_; ++r) out << data_[r].to_string() << '\n';
    return out.str();
}

// ------------------------------------------------------------ free functions

Gf2Vec mat_apply(const Gf2Mat& m, const Gf2Vec& v) {
    require(m.cols() == v.size(), "gf2: matrix-vector dimension mismatch");
    Gf2Vec out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (m.row(r).dot(v)) out.set(r, true);
    return out;
}

Gf2Mat mat_mul(const Gf2Mat& a, const Gf2Mat& b) {
    require(a.cols() == b.rows(), "gf2: matrix product dimension mismatch");
    std::vector<Gf2Vec> rows;
    rows.reserve(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        // Row r of a·b is the sum of the rows of b selected by row r of a.
        Gf2Vec acc(b.cols());
        const Gf2Vec& ar = a.row(r);
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (ar.get(k)) acc ^= b.row(k);
        rows.push_back(std::move(acc));
    }
    return Gf2Mat::from_rows(std::move(rows), b.cols());
}

Gf2Mat mat_add(const Gf2Mat& a, const Gf2Mat& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "gf2: matrix sum dimension mismatch");
    std::vector<Gf2Vec> rows;
    rows.reserve(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) rows.push_back(a.row(r) + b.row(r));
    return Gf2Mat::from_rows(std::move(rows), a.cols());
}

bool bilinear(const Gf2Mat& q, const Gf2Vec& u, const Gf2Vec& v) {
    require(q.rows() == u.size() && q.cols() == v.size(), "gf2: bilinear form dimension mismatch");
    return u.dot(mat_apply(q, v));
}

Gf2Mat hstack(const Gf2Mat& a, const Gf2Mat& b) {
    require(a.rows() == b.rows(), "gf2: hstack row mismatch");
    Gf2Mat m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

Gf2Mat vstack(const Gf2Mat& a, const Gf2Mat& b) {
    require(a.cols() == b.cols(), "gf2: vstack column mismatch");
    Gf2Mat m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

Gf2Mat block_diag(std::span<const Gf2Mat> blocks) {
    std::size_t nr = 0;
    std::size_t nc = 0;
    for (const auto& b : blocks) {
        nr += b.rows();
        nc += b.cols();
    }
    Gf2Mat m(nr, nc);
    std::size_t r0 = 0;
    std::size_t c0 = 0;
    for (const auto& b : blocks) {
        m.set_block(r0, c0, b);
        r0 += b.rows();
        c0 += b.cols();
    }
    return m;
}

Echelon rref(const Gf2Mat& m) {
    std::vector<Gf2Vec> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));

    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t c = 0; c < m.cols() && next < rows.size(); ++c) {
        std::size_t p = next;
        while (p < rows.size() && !rows[p].get(c)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[next], rows[p]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != next && rows[r].get(c)) rows[r] ^= rows[next];
        pivots.push_back(c);
        ++next;
    }
    return {Gf2Mat::from_rows(std::move(rows), m.cols()), std::move(pivots)};
}

std::size_t rank(const Gf2Mat& m) { return rref(m).pivot_cols.size(); }

std::vector<Gf2Vec> kernel_basis(const Gf2Mat& m) {
    const Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : e.pivot_cols) is_pivot[c] = true;

    std::vector<Gf2Vec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Gf2Vec v = Gf2Vec::unit(m.cols(), f);
        // Pivot variable k is determined by row k: x_pivot = sum of free entries.
        for (std::size_t k = 0; k < e.pivot_cols.size(); ++k)
            if (e.reduced.get(k, f)) v.set(e.pivot_cols[k], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Gf2Vec> solve(const Gf2Mat& m, const Gf2Vec& b) {
    require(b.size() == m.rows(), "gf2: right-hand side has the wrong length");
    Gf2Mat augmented(m.rows(), m.cols() + 1);
    augmented.set_block(0, 0, m);
    for (std::size_t r = 0; r < m.rows(); ++r) augmented.set(r, m.cols(), b.get(r));
    const Echelon e = rref(augmented);
    if (!e.pivot_cols.empty() && e.pivot_cols.back() == m.cols()) return std::nullopt;
    Gf2Vec x(m.cols());
    for (std::size_t k = 0; k < e.pivot_cols.size(); ++k)
        if (e.reduced.get(k, m.cols())) x.set(e.pivot_cols[k], true);
    return x;
}

bool is_invertible(const Gf2Mat& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

Gf2Mat inverse(const Gf2Mat& m) {
    require(m.rows() == m.cols(), "gf2: inverse of a non-square matrix");
    const std::size_t n = m.rows();
    const Echelon e = rref(hstack(m, Gf2Mat::identity(n)));
    require(e.pivot_cols.size() >= n && (n == 0 || e.pivot_cols[n - 1] == n - 1),
            "gf2: matrix is singular");
    return e.reduced.block(0, n, n, n);
}

}  // namespace pmono::gf2
