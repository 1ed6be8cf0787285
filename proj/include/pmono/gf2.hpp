#pragma once

// Dense linear algebra over the two-element field.
//
// Vectors are packed 64 coordinates per machine word; coordinate i lives in
// bit (i % 64) of word (i / 64). Unused high bits of the last word are kept
// zero so that word-wise comparison and popcount are exact.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pmono::gf2 {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

class Gf2Vec {
public:
    Gf2Vec() = default;
    explicit Gf2Vec(std::size_t n);

    static Gf2Vec zero(std::size_t n) { return Gf2Vec(n); }
    static Gf2Vec unit(std::size_t n, std::size_t i);
    static Gf2Vec ones(std::size_t n);
    // "0110" -> coordinates (0,1,1,0). Whitespace is ignored.
    static Gf2Vec from_string(std::string_view bits);
    // Low `n` bits of `bits`, coordinate i = bit i.
    static Gf2Vec from_word(Word bits, std::size_t n);

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i, bool value);
    void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

    bool is_zero() const;
    std::size_t weight() const;
    // Sum of coordinate-wise products, i.e. the standard dot product.
    bool dot(const Gf2Vec& other) const;

    // Coordinates [offset, offset + len) as a new vector.
    Gf2Vec slice(std::size_t offset, std::size_t len) const;
    // Overwrite coordinates [offset, offset + part.size()).
    void assign(std::size_t offset, const Gf2Vec& part);
    // First 64 coordinates packed into a word (size must be <= 64).
    Word to_word() const;

    Gf2Vec& operator^=(const Gf2Vec& other);
    Gf2Vec& operator+=(const Gf2Vec& other) { return *this ^= other; }
    friend Gf2Vec operator+(Gf2Vec a, const Gf2Vec& b) { return a ^= b; }

    bool operator==(const Gf2Vec& other) const = default;
    // Lexicographic, coordinate 0 most significant.
    bool lex_less(const Gf2Vec& other) const;

    std::span<const Word> words() const { return words_; }
    std::string to_string() const;

private:
    std::size_t n_ = 0;
    std::vector<Word> words_;
};

Gf2Vec concat(std::span<const Gf2Vec> parts);

class Gf2Mat {
public:
    Gf2Mat() = default;
    Gf2Mat(std::size_t rows, std::size_t cols);

    static Gf2Mat zero(std::size_t rows, std::size_t cols) { return Gf2Mat(rows, cols); }
    static Gf2Mat identity(std::size_t n);
    static Gf2Mat from_rows(std::vector<Gf2Vec> rows, std::size_t cols);
    static Gf2Mat from_columns(std::span<const Gf2Vec> cols, std::size_t rows);
    // One string per row, e.g. {"110", "011"}.
    static Gf2Mat from_strings(std::span<const std::string> rows);
    // Matrix of the permutation sending basis vector e_i to e_{perm[i]}.
    static Gf2Mat permutation(std::span<const std::size_t> perm);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool value) { data_[r].set(c, value); }
    const Gf2Vec& row(std::size_t r) const { return data_[r]; }
    Gf2Vec column(std::size_t c) const;

    Gf2Mat transpose() const;
    bool is_zero() const;
    bool is_identity() const;
    bool operator==(const Gf2Mat& other) const = default;

    // Sub-block of rows [r0, r0+nr) and columns [c0, c0+nc).
    Gf2Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Gf2Mat& b);

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Gf2Vec> data_;
};

// m·v. Throws UsageError when m.cols() != v.size().
Gf2Vec mat_apply(const Gf2Mat& m, const Gf2Vec& v);
// a·b. Throws UsageError on inner-dimension mismatch.
Gf2Mat mat_mul(const Gf2Mat& a, const Gf2Mat& b);
Gf2Mat mat_add(const Gf2Mat& a, const Gf2Mat& b);
inline Gf2Mat operator*(const Gf2Mat& a, const Gf2Mat& b) { return mat_mul(a, b); }
inline Gf2Vec operator*(const Gf2Mat& a, const Gf2Vec& v) { return mat_apply(a, v); }
inline Gf2Mat operator+(const Gf2Mat& a, const Gf2Mat& b) { return mat_add(a, b); }

// Bilinear form uᵀ·Q·v.
bool bilinear(const Gf2Mat& q, const Gf2Vec& u, const Gf2Vec& v);

Gf2Mat hstack(const Gf2Mat& a, const Gf2Mat& b);
Gf2Mat vstack(const Gf2Mat& a, const Gf2Mat& b);
Gf2Mat block_diag(std::span<const Gf2Mat> blocks);

// Reduced row echelon form. Pivots are chosen at the leftmost column that
// still has a nonzero entry, using the topmost such row, so the result is a
// deterministic function of the input.
struct Echelon {
    Gf2Mat reduced;
    std::vector<std::size_t> pivot_cols;
};
Echelon rref(const Gf2Mat& m);

std::size_t rank(const Gf2Mat& m);
// Basis of {v : m·v = 0}, one vector per free column in increasing order.
std::vector<Gf2Vec> kernel_basis(const Gf2Mat& m);
// Some x with m·x = b, or nullopt when b is outside the column space.
std::optional<Gf2Vec> solve(const Gf2Mat& m, const Gf2Vec& b);
bool is_invertible(const Gf2Mat& m);
// Throws UsageError for singular or non-square input.
Gf2Mat inverse(const Gf2Mat& m);

}  // namespace pmono::gf2
