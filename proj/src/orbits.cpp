#include "pmono/orbits.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <map>
#include <thread>
#include <unordered_map>

#include "pmono/errors.hpp"
#include "pmono/formulas.hpp"

namespace pmono {

using gf2::Gf2Mat;
using gf2::Gf2Vec;

std::string_view to_string(ExtensionConvention e) { return e == ExtensionConvention::Product ? "product" : "shifted"; }

ExtensionConvention extension_from_string(std::string_view name) {
    if (name == "product") return ExtensionConvention::Product;
    if (name == "shifted") return ExtensionConvention::Shifted;
    throw UsageError("unknown extension convention '" + std::string(name) + "' (expected product or shifted)");
}

std::string_view to_string(ZPattern z) {
    switch (z) {
        case ZPattern::None: return "none";
        case ZPattern::Zero: return "z=0";
        case ZPattern::Zpp0ZpNonzero: return "z''=0,z'!=0";
        case ZPattern::ZppNonzero: return "z''!=0";
    }
    return "?";
}

std::string_view to_string(MatchStatus m) {
    switch (m) {
        case MatchStatus::Exact: return "exact";
        case MatchStatus::LocalizedMismatch: return "localized-mismatch";
        case MatchStatus::Mismatch: return "mismatch";
        case MatchStatus::NotApplicable: return "n/a";
    }
    return "?";
}

std::string StratumKey::to_string() const {
    std::string f;
    for (int b = front_width - 1; b >= 0; --b) f += ((front >> b) & 1U) ? '1' : '0';
    std::string out = "front=" + (f.empty() ? std::string("-") : f) + " eps=" + std::to_string(eps) +
                      " z=" + std::string(pmono::to_string(zpat));
    if (pairing >= 0) out += " pair=" + std::to_string(pairing);
    return out;
}

std::string RegionRow::label() const {
    return std::string(to_string(zpat)) + " eps=" + (eps < 0 ? std::string("all") : std::to_string(eps));
}

// ------------------------------------------------------------------ spaces

std::string StateSpace::label() const {
    std::string out = case_id ? std::string(to_string(*case_id)) : std::string(to_string(lattice.kind));
    out += " bo=" + std::string(to_string(options.bo));
    if (options.front == FrontBit::Extension) out += " ext=" + std::string(to_string(options.extension));
    if (options.front == FrontBit::Sheet) out += " sheets=2";
    return out;
}

Gf2Vec StateSpace::decode(std::uint64_t code) const {
    Gf2Vec bits(dim);
    for (std::size_t i = 0; i < dim; ++i)
        if ((code >> (dim - 1 - i)) & 1U) bits.set(i, true);
    return decode_mat * bits;
}

std::uint64_t StateSpace::encode(const Gf2Vec& storage) const {
    if (storage.size() != storage_dim) throw UsageError("encode: vector width does not match the state space");
    const Gf2Vec canonical = projection * storage;
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < dim; ++i)
        if (canonical.get(pivots[i])) code |= std::uint64_t{1} << (dim - 1 - i);
    return code;
}

std::string StateSpace::render(const Gf2Vec& v) const {
    std::string out;
    if (front_bits) out += v.get(0) ? '1' : '0';
    for (const auto& b : lattice.blocks) {
        if (b.dim == 0) continue;
        if (!out.empty()) out += '|';
        out += v.slice(front_bits + b.offset, b.dim).to_string();
    }
    return out;
}

Gf2Mat StateSpace::compact_matrix(const Gf2Mat& g) const {
    if (g.rows() != lattice.storage_dim || g.cols() != lattice.storage_dim)
        throw UsageError("generator does not act on " + label());
    Gf2Mat full = Gf2Mat::identity(storage_dim);
    full.set_block(front_bits, front_bits, g);
    const Gf2Mat pg = projection * full;
    for (const auto& k : gf2::kernel_basis(projection))
        if (!(pg * k).is_zero()) throw IntegrityError("generator does not respect the identification on " + label());
    const Gf2Mat image = pg * decode_mat;
    Gf2Mat m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) m.set(r, c, image.get(pivots[r], c));
    return m;
}

StateSpace make_state_space(const LatticeDecomp& lattice, const SurfaceData& sd, SpaceOptions options,
                            std::optional<CaseId> case_id) {
    StateSpace sp;
    sp.case_id = case_id;
    sp.sd = sd;
    sp.lattice = lattice;
    sp.options = options;
    sp.front_bits = options.front == FrontBit::None ? 0 : 1;
    sp.storage_dim = sp.front_bits + lattice.storage_dim;
    const std::size_t n = sp.storage_dim;

    std::vector<Gf2Vec> valid;
    if (sp.front_bits) valid.push_back(Gf2Vec::unit(n, 0));
    const Gf2Mat lb = lattice.basis();
    for (std::size_t c = 0; c < lb.cols(); ++c) {
        Gf2Vec v(n);
        v.assign(sp.front_bits, lb.column(c));
        valid.push_back(std::move(v));
    }

    const bool has_y = lattice.has_block(BlockRole::Branch);
    Gf2Vec bo(n);
    if (has_y) bo.assign(sp.offset(BlockRole::Branch), sd.b_o);

    Gf2Mat p = Gf2Mat::identity(n);
    if (options.front == FrontBit::Extension && options.extension == ExtensionConvention::Shifted) {
        // x_o read in the w block of puncture-marker differences is all ones.
        Gf2Vec shift = bo;
        if (lattice.has_block(BlockRole::Puncture)) {
            const Block& w = lattice.block(BlockRole::Puncture);
            shift.assign(sp.offset(BlockRole::Puncture), Gf2Vec::ones(w.dim));
        }
        shift.flip(0);
        for (std::size_t r = 0; r < n; ++r)
            if (shift.get(r)) p.set(r, 0, !p.get(r, 0));
    }
    if (options.bo == BoConvention::Quotient && has_y) {
        const Block& y = lattice.block(BlockRole::Branch);
        const std::size_t last = sp.offset(BlockRole::Branch) + y.dim - 1;
        Gf2Mat q = Gf2Mat::identity(n);
        for (std::size_t r = 0; r < n; ++r)
            if (bo.get(r)) q.set(r, last, !q.get(r, last));
        p = q * p;
    }
    sp.projection = p;

    const Gf2Mat canonical = p * Gf2Mat::from_columns(valid, n);
    const gf2::Echelon e = gf2::rref(canonical.transpose());
    sp.dim = e.pivot_cols.size();
    sp.pivots = e.pivot_cols;
    std::vector<Gf2Vec> rows;
    for (std::size_t r = 0; r < sp.dim; ++r) rows.push_back(e.reduced.row(r));
    sp.decode_mat = Gf2Mat::from_columns(rows, n);
    return sp;
}

StateSpace case_space(CaseId c, const SurfaceData& sd, BoConvention bo, ExtensionConvention ext) {
    SpaceOptions opts;
    opts.bo = bo;
    opts.extension = ext;
    if (c == CaseId::SL2R) opts.front = FrontBit::Extension;
    if (c == CaseId::PGL2R) opts.front = FrontBit::Sheet;
    return make_state_space(build_lattice(case_lattice(c), sd), sd, opts, c);
}

std::size_t case_space_dim(CaseId c, const SurfaceData& sd, BoConvention bo, ExtensionConvention ext) {
    std::size_t d = build_lattice(case_lattice(c), sd).total_dim;
    if (bo == BoConvention::Quotient) d -= 1;
    if (c == CaseId::PGL2R || (c == CaseId::SL2R && ext == ExtensionConvention::Product)) d += 1;
    return d;
}

// ------------------------------------------------------------------ engine

namespace {

using ByteTable = std::array<std::array<std::uint64_t, 256>, 4>;

// Table form of a GF(2)-linear map on codes of at most 32 bits.
ByteTable linear_table(const std::vector<std::uint64_t>& bit_images) {
    ByteTable t{};
    for (std::size_t byte = 0; byte < 4; ++byte)
        for (unsigned v = 0; v < 256; ++v) {
            std::uint64_t acc = 0;
            for (unsigned b = 0; b < 8; ++b) {
                const std::size_t bit = byte * 8 + b;
                if (((v >> b) & 1U) && bit < bit_images.size()) acc ^= bit_images[bit];
            }
            t[byte][v] = acc;
        }
    return t;
}

inline std::uint64_t apply_table(const ByteTable& t, std::uint64_t code) {
    return t[0][code & 0xFF] ^ t[1][(code >> 8) & 0xFF] ^ t[2][(code >> 16) & 0xFF] ^ t[3][(code >> 24) & 0xFF];
}

struct BlockMask {
    std::size_t offset = 0;
    std::size_t dim = 0;
    bool present = false;
    std::uint64_t get(std::uint64_t word) const {
        if (!present || dim == 0) return 0;
        return (word >> offset) & ((std::uint64_t{1} << dim) - 1);
    }
};

std::uint64_t pack_key(const StratumKey& k) {
    return (std::uint64_t{k.front} << 32) | (std::uint64_t(k.eps) << 16) | (std::uint64_t(k.zpat) << 8) |
           std::uint64_t(k.pairing + 1);
}

StratumKey unpack_key(std::uint64_t p, int front_width) {
    StratumKey k;
    k.front = static_cast<std::uint32_t>(p >> 32);
    k.front_width = front_width;
    k.eps = static_cast<int>((p >> 16) & 0xFFFF);
    k.zpat = static_cast<ZPattern>((p >> 8) & 0xFF);
    k.pairing = static_cast<int>(p & 0xFF) - 1;
    return k;
}

class Engine {
public:
    Engine(const StateSpace& space, const std::vector<MonodromyGen>& gens) : sp_(space) {
        if (space.storage_dim > 64) throw UsageError("state space storage exceeds 64 coordinates");
        n_ = space.dim;
        if (n_ > 32) throw UsageError("compact dimension above 32 is not supported");

        std::vector<std::string> seen;
        std::uint64_t moved = 0;  // code bits some generator does not fix
        for (const auto& g : gens) {
            const Gf2Mat m = space.compact_matrix(g.matrix);
            if (m.is_identity()) continue;
            const std::string sig = m.to_string();
            if (std::find(seen.begin(), seen.end(), sig) != seen.end()) continue;
            seen.push_back(sig);
            std::vector<std::uint64_t> images(n_);
            for (std::size_t c = 0; c < n_; ++c) {
                std::uint64_t img = 0;
                for (std::size_t r = 0; r < n_; ++r)
                    if (m.get(r, c)) img |= std::uint64_t{1} << (n_ - 1 - r);
                images[n_ - 1 - c] = img;
            }
            tables_.push_back(linear_table(images));
            for (std::size_t r = 0; r < n_; ++r)
                if (m.row(r) != Gf2Vec::unit(n_, r)) moved |= std::uint64_t{1} << (n_ - 1 - r);
        }
        const std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
        inv_mask_ = all & ~moved;

        std::vector<std::uint64_t> dec(n_);
        for (std::size_t c = 0; c < n_; ++c) {
            const Gf2Vec col = space.decode_mat.column(c);
            std::uint64_t w = 0;
            for (std::size_t k = 0; k < space.storage_dim; ++k)
                if (col.get(k)) w |= std::uint64_t{1} << k;
            dec[n_ - 1 - c] = w;
        }
        decode_ = linear_table(dec);

        for (std::size_t b = 0; b < n_; ++b) {
            if ((inv_mask_ >> b) & 1U)
                inv_pos_.push_back(b);
            else
                free_pos_.push_back(b);
        }
        std::vector<std::uint64_t> dep(free_pos_.size());
        for (std::size_t i = 0; i < free_pos_.size(); ++i) dep[i] = std::uint64_t{1} << free_pos_[i];
        deposit_ = linear_table(dep);
        std::vector<std::uint64_t> ext(n_, 0);
        for (std::size_t i = 0; i < free_pos_.size(); ++i) ext[free_pos_[i]] = std::uint64_t{1} << i;
        extract_ = linear_table(ext);

        auto mask_of = [&](BlockRole role) {
            BlockMask m;
            if (space.lattice.has_block(role)) {
                m.present = true;
                m.offset = space.offset(role);
                m.dim = space.lattice.block(role).dim;
            }
            return m;
        };
        w_ = mask_of(BlockRole::Puncture);
        x_ = mask_of(BlockRole::Base);
        y_ = mask_of(BlockRole::Branch);
        zpp_ = mask_of(BlockRole::DualBase);
        zp_ = mask_of(BlockRole::DualPuncture);
        front_width_ = static_cast<int>(space.front_bits + (w_.present ? w_.dim : 0));
        quotient_ = space.options.bo == BoConvention::Quotient;
        two_l_ = space.sd.branch_count;
    }

    std::size_t dim() const { return n_; }
    std::size_t free_dim() const { return free_pos_.size(); }
    std::size_t slice_count_log2() const { return inv_pos_.size(); }
    int front_width() const { return front_width_; }

    std::uint64_t slice_code(std::uint64_t slice_index) const {
        std::uint64_t code = 0;
        for (std::size_t i = 0; i < inv_pos_.size(); ++i)
            if ((slice_index >> i) & 1U) code |= std::uint64_t{1} << inv_pos_[i];
        return code;
    }
    std::uint64_t inv_mask() const { return inv_mask_; }
    std::uint64_t deposit(std::uint64_t local) const { return apply_table(deposit_, local); }
    std::uint64_t extract(std::uint64_t code) const { return apply_table(extract_, code); }
    std::uint64_t storage_word(std::uint64_t code) const { return apply_table(decode_, code); }
    const std::vector<ByteTable>& tables() const { return tables_; }

    StratumKey key_of_word(std::uint64_t word) const {
        StratumKey k;
        k.front_width = front_width_;
        std::uint32_t front = 0;
        if (sp_.front_bits) front = static_cast<std::uint32_t>(word & 1U);
        if (w_.present)
            for (std::size_t i = 0; i < w_.dim; ++i) front = (front << 1) | static_cast<std::uint32_t>((word >> (w_.offset + i)) & 1U);
        k.front = front;
        if (y_.present) {
            const int weight = std::popcount(y_.get(word));
            k.eps = quotient_ ? std::min(weight, two_l_ - weight) : weight;
        }
        if (zpp_.present) {
            const std::uint64_t z = zpp_.get(word);
            if (z != 0) {
                k.zpat = ZPattern::ZppNonzero;
                if (x_.present) {
                    const std::uint64_t x = x_.get(word);
                    const std::uint64_t odd = 0x5555555555555555ULL;
                    const std::uint64_t swapped = ((x & odd) << 1) | ((x >> 1) & odd);
                    k.pairing = std::popcount(swapped & z) & 1;
                }
            } else {
                k.zpat = zp_.get(word) != 0 ? ZPattern::Zpp0ZpNonzero : ZPattern::Zero;
            }
        }
        return k;
    }

    StratumKey key_of_code(std::uint64_t code) const { return key_of_word(storage_word(code)); }

private:
    const StateSpace& sp_;
    std::size_t n_ = 0;
    std::vector<ByteTable> tables_;
    ByteTable decode_{};
    ByteTable deposit_{};
    ByteTable extract_{};
    std::uint64_t inv_mask_ = 0;
    std::vector<std::size_t> inv_pos_;
    std::vector<std::size_t> free_pos_;
    BlockMask w_, x_, y_, zpp_, zp_;
    int front_width_ = 0;
    bool quotient_ = false;
    int two_l_ = 0;
};

struct SliceResult {
    std::vector<OrbitInfo> orbits;
    std::unordered_map<std::uint64_t, std::uint64_t> key_counts;
    std::uint64_t normal_form_orbits = 0;
    std::uint64_t uncovered_orbits = 0;
};

// Normal-form candidates for one slice, as storage vectors with zero front,
// w and z parts. The slice's invariant coordinates are merged in afterwards.
std::vector<Gf2Vec> normal_forms(const StateSpace& sp, const Gf2Vec& slice_storage) {
    const LatticeDecomp& ld = sp.lattice;
    const SurfaceData& sd = sp.sd;
    const bool quotient = sp.options.bo == BoConvention::Quotient;
    const int two_l = sd.branch_count;
    const bool has_x = ld.has_block(BlockRole::Base);
    const bool has_z = ld.has_block(BlockRole::DualBase);
    const std::size_t yoff = sp.offset(BlockRole::Branch);
    const std::size_t xdim = has_x ? ld.block(BlockRole::Base).dim : 0;

    Gf2Vec zpp;
    if (has_z) zpp = slice_storage.slice(sp.offset(BlockRole::DualBase), ld.block(BlockRole::DualBase).dim);

    auto state = [&](int k, const Gf2Vec* x) {
        Gf2Vec v(sp.storage_dim);
        for (int i = 0; i < k; ++i) v.set(yoff + static_cast<std::size_t>(i), true);
        if (x) v.assign(sp.offset(BlockRole::Base), *x);
        return v;
    };

    std::vector<Gf2Vec> out;
    if (has_z && !zpp.is_zero()) {
        out.push_back(state(0, nullptr));
        if (has_x) {
            // Some basis vector pairs to 1 with z''.
            const Gf2Mat j = symplectic_gram(sd.g);
            for (std::size_t i = 0; i < xdim; ++i) {
                const Gf2Vec e = Gf2Vec::unit(xdim, i);
                if (gf2::bilinear(j, e, zpp)) {
                    out.push_back(state(0, &e));
                    break;
                }
            }
        }
        return out;
    }

    // y in {0, b_o} keeps every x; intermediate weights are reduced to x = 0.
    const int max_k = quotient ? sd.l : two_l - 2;
    std::vector<int> fixed_weights{0};
    if (!quotient) fixed_weights.push_back(two_l);
    for (int k : fixed_weights) {
        if (has_x && xdim <= 20) {
            for (gf2::Word bits = 0; bits < (gf2::Word{1} << xdim); ++bits) {
                const Gf2Vec x = Gf2Vec::from_word(bits, xdim);
                out.push_back(state(k, &x));
            }
        } else {
            out.push_back(state(k, nullptr));
        }
    }
    for (int k = 2; k <= max_k; k += 2) out.push_back(state(k, nullptr));
    return out;
}

struct EngineRun {
    std::vector<SliceResult> slices;
};

EngineRun run_engine(const StateSpace& sp, const Engine& eng, bool classify, int workers) {
    const std::size_t m = eng.free_dim();
    if (m > static_cast<std::size_t>(kExhaustiveCap))
        throw UsageError("orbit slices have " + std::to_string(m) + " free coordinates, above the cap of " +
                         std::to_string(kExhaustiveCap));
    if (eng.slice_count_log2() > 30) throw UsageError("too many invariant slices");
    const std::uint64_t nslices = std::uint64_t{1} << eng.slice_count_log2();
    const std::uint64_t local_count = std::uint64_t{1} << m;

    EngineRun run;
    run.slices.resize(nslices);
    std::atomic<std::uint64_t> next{0};

    auto work = [&]() {
        std::vector<std::uint64_t> visited((local_count + 63) / 64);
        std::vector<std::uint32_t> queue;
        queue.reserve(1024);
        while (true) {
            const std::uint64_t si = next.fetch_add(1);
            if (si >= nslices) break;
            SliceResult& res = run.slices[si];
            std::fill(visited.begin(), visited.end(), 0);
            const std::uint64_t base = eng.slice_code(si);

            auto is_visited = [&](std::uint64_t local) { return (visited[local >> 6] >> (local & 63)) & 1U; };
            auto mark = [&](std::uint64_t local) { visited[local >> 6] |= std::uint64_t{1} << (local & 63); };

            auto bfs = [&](std::uint64_t start) {
                OrbitInfo orbit;
                orbit.rep = ~std::uint64_t{0};
                queue.clear();
                queue.push_back(static_cast<std::uint32_t>(start));
                mark(start);
                std::size_t head = 0;
                while (head < queue.size()) {
                    const std::uint64_t local = queue[head++];
                    const std::uint64_t code = base | eng.deposit(local);
                    orbit.rep = std::min(orbit.rep, code);
                    ++orbit.size;
                    ++res.key_counts[pack_key(eng.key_of_code(code))];
                    for (const auto& t : eng.tables()) {
                        const std::uint64_t nl = eng.extract(apply_table(t, code));
                        if (!is_visited(nl)) {
                            mark(nl);
                            queue.push_back(static_cast<std::uint32_t>(nl));
                        }
                    }
                }
                res.orbits.push_back(orbit);
            };

            if (classify) {
                const Gf2Vec slice_storage = sp.decode(base);
                for (const auto& nf : normal_forms(sp, slice_storage)) {
                    const std::uint64_t code = (base & eng.inv_mask()) | (sp.encode(nf) & ~eng.inv_mask());
                    const std::uint64_t local = eng.extract(code);
                    if (!is_visited(local)) {
                        bfs(local);
                        ++res.normal_form_orbits;
                    }
                }
            }
            for (std::uint64_t local = 0; local < local_count; ++local) {
                if (is_visited(local)) continue;
                bfs(local);
                if (classify) ++res.uncovered_orbits;
            }
        }
    };

    const int nthreads = std::max(1, std::min<int>(workers, static_cast<int>(std::min<std::uint64_t>(nslices, 64))));
    if (nthreads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return run;
}

// ------------------------------------------------------------ predictions

struct RegionId {
    ZPattern zpat;
    int eps;
    auto operator<=>(const RegionId&) const = default;
};

RegionId region_of(const StratumKey& k) {
    if (k.zpat == ZPattern::None || k.zpat == ZPattern::Zero) return {k.zpat, k.eps};
    return {k.zpat, -1};
}

// Orbit counts the proofs assign to each orbit-invariant region, in the full
// convention, summed over front values.
std::map<RegionId, BigInt> full_predictions(CaseId c, const SurfaceData& sd) {
    const BigInt w = pow2(sd.s - 1);
    const BigInt gg = pow2(2 * sd.g);
    const int two_l = sd.branch_count;
    std::map<RegionId, BigInt> p;
    switch (c) {
        case CaseId::GL2R:
            p[{ZPattern::Zero, 0}] = w * gg;
            for (int k = 2; k <= two_l; k += 2) p[{ZPattern::Zero, k}] = w;
            p[{ZPattern::Zpp0ZpNonzero, -1}] = 2 * w * (w - 1);
            p[{ZPattern::ZppNonzero, -1}] = 2 * w * w * (gg - 1);
            break;
        case CaseId::SL2R:
            // Two copies for the extension class.
            p[{ZPattern::None, 0}] = 2 * w * gg;
            for (int k = 2; k <= two_l - 2; k += 2) p[{ZPattern::None, k}] = 2 * w;
            p[{ZPattern::None, two_l}] = 0;
            break;
        case CaseId::PGL2R:
            // Two degree classes; per class z' ranges over 2^{s-1} values.
            for (int k = 0; k <= two_l - 2; k += 2) p[{ZPattern::Zero, k}] = 2;
            p[{ZPattern::Zero, two_l}] = 0;
            p[{ZPattern::Zpp0ZpNonzero, -1}] = 2 * (w - 1) * sd.l;
            p[{ZPattern::ZppNonzero, -1}] = 2 * w * (gg - 1);
            break;
    }
    return p;
}

std::map<RegionId, BigInt> predictions(const StateSpace& sp) {
    std::map<RegionId, BigInt> full = full_predictions(*sp.case_id, sp.sd);
    if (sp.options.bo == BoConvention::Full) return full;
    // Adding b_o pairs each weight-k orbit with a weight-(2l-k) orbit, so a
    // class keeps the count of its lower weight.
    std::map<RegionId, BigInt> merged;
    for (const auto& [id, v] : full)
        if (id.eps <= sp.sd.l) merged[id] = v;
    return merged;
}

bool is_ambiguous(const RegionId& r, const StateSpace& sp) {
    if (r.zpat == ZPattern::Zpp0ZpNonzero) return true;
    if (r.zpat == ZPattern::ZppNonzero) return false;
    return r.eps == 0 || r.eps == sp.sd.branch_count;
}

OrbitReport assemble(const StateSpace& sp, const Engine& eng, EngineRun run, std::string engine_name) {
    OrbitReport rep;
    rep.engine = std::move(engine_name);
    rep.space = sp.label();
    rep.case_id = sp.case_id;
    rep.g = sp.sd.g;
    rep.s = sp.sd.s;
    rep.dim = sp.dim;
    rep.state_count = sp.state_count();

    std::map<std::uint64_t, std::uint64_t> key_counts;
    for (auto& slice : run.slices) {
        rep.orbits.insert(rep.orbits.end(), slice.orbits.begin(), slice.orbits.end());
        for (const auto& [k, c] : slice.key_counts) key_counts[k] += c;
        rep.normal_form_orbits += slice.normal_form_orbits;
        rep.uncovered_orbits += slice.uncovered_orbits;
    }
    std::sort(rep.orbits.begin(), rep.orbits.end(), [](const OrbitInfo& a, const OrbitInfo& b) { return a.rep < b.rep; });
    rep.total_orbits = rep.orbits.size();

    std::uint64_t size_sum = 0;
    std::map<StratumKey, StratumRow> strata;
    std::map<StratumKey, std::uint64_t> first_rep;
    rep.per_class.assign(sp.front_bits ? 2 : 1, 0);
    for (const auto& o : rep.orbits) {
        size_sum += o.size;
        const std::uint64_t word = eng.storage_word(o.rep);
        const StratumKey k = eng.key_of_word(word);
        StratumRow& row = strata[k];
        row.key = k;
        ++row.orbits;
        if (o.size == 1) ++row.singleton_orbits;
        if (!first_rep.count(k)) first_rep[k] = o.rep;
        ++rep.per_class[sp.front_bits ? (word & 1U) : 0];
    }
    std::uint64_t element_sum = 0;
    for (const auto& [packed, count] : key_counts) {
        const StratumKey k = unpack_key(packed, eng.front_width());
        StratumRow& row = strata[k];
        row.key = k;
        row.elements = count;
        element_sum += count;
    }
    for (auto& [k, row] : strata) {
        if (first_rep.count(k)) row.representative = sp.render(sp.decode(first_rep[k]));
        rep.strata.push_back(row);
    }
    rep.partition_ok = size_sum == rep.state_count && element_sum == rep.state_count;

    // Regions and predictions.
    std::map<RegionId, std::uint64_t> observed;
    for (const auto& row : rep.strata) observed[region_of(row.key)] += row.orbits;
    std::map<RegionId, BigInt> predicted;
    if (sp.case_id) predicted = predictions(sp);
    std::map<RegionId, RegionRow> regions;
    for (const auto& [id, v] : observed) {
        RegionRow& r = regions[id];
        r.zpat = id.zpat;
        r.eps = id.eps;
        r.observed = v;
    }
    for (const auto& [id, v] : predicted) {
        if (v == 0 && !observed.count(id)) continue;
        RegionRow& r = regions[id];
        r.zpat = id.zpat;
        r.eps = id.eps;
        r.predicted = v.convert_to<std::uint64_t>();
    }
    for (auto& [id, r] : regions) {
        if (sp.case_id && !r.predicted) r.predicted = 0;
        r.ambiguous = is_ambiguous(id, sp);
        rep.discrepancy.push_back(r);
    }

    if (sp.case_id && sp.sd.g >= 2) {
        rep.closed_total = orbit_count_closed(*sp.case_id, sp.sd.g, sp.sd.s).convert_to<std::uint64_t>();
        bool localized = true;
        for (const auto& r : rep.discrepancy) {
            if (r.predicted && *r.predicted != r.observed) {
                rep.mismatch_strata.push_back(r.label());
                localized = localized && r.ambiguous;
            }
        }
        if (rep.total_orbits == *rep.closed_total)
            rep.match = MatchStatus::Exact;
        else
            rep.match = localized ? MatchStatus::LocalizedMismatch : MatchStatus::Mismatch;
    }

    if (sp.case_id) {
        const ZPattern z0 = *sp.case_id == CaseId::SL2R ? ZPattern::None : ZPattern::Zero;
        // Maximal stratum: y = 0 with z = 0 is pointwise fixed.
        ProofCheck maximal{"maximal stratum (y=0, z=0) is all singleton orbits"};
        for (const auto& row : rep.strata) {
            if (row.key.zpat != z0 || row.key.eps != 0) continue;
            maximal.expected += row.elements;
            maximal.observed += row.singleton_orbits;
        }
        maximal.pass = maximal.expected > 0 && maximal.expected == maximal.observed;
        rep.proof_checks.push_back(maximal);

        if (*sp.case_id == CaseId::GL2R) {
            ProofCheck count{"maximal stratum has 2^{2g+s-1} orbits",
                             pow2(2 * sp.sd.g + sp.sd.s - 1).convert_to<std::uint64_t>(), maximal.observed};
            count.pass = count.expected == count.observed;
            rep.proof_checks.push_back(count);
        }

        // One orbit per (front, weight class) for intermediate weights at z = 0.
        ProofCheck middle{"one orbit per (front, eps) for intermediate eps at z=0"};
        std::map<std::pair<std::uint32_t, int>, std::pair<std::uint64_t, std::uint64_t>> groups;
        const int top = sp.options.bo == BoConvention::Quotient ? sp.sd.l : sp.sd.branch_count - 2;
        for (const auto& row : rep.strata) {
            if (row.key.zpat != z0 || row.key.eps < 2 || row.key.eps > top) continue;
            auto& grp = groups[{row.key.front, row.key.eps}];
            grp.first += row.orbits;
            grp.second += row.elements;
        }
        middle.pass = true;
        for (const auto& [id, grp] : groups) {
            ++middle.expected;
            middle.observed += grp.first;
            middle.pass = middle.pass && grp.first == 1;
        }
        rep.proof_checks.push_back(middle);

        if (*sp.case_id != CaseId::SL2R) {
            const BigInt w = pow2(sp.sd.s - 1);
            const BigInt expect = *sp.case_id == CaseId::GL2R ? 2 * w * w * (pow2(2 * sp.sd.g) - 1)
                                                               : 2 * w * (pow2(2 * sp.sd.g) - 1);
            ProofCheck zcheck{"z''!=0 reduced forms", expect.convert_to<std::uint64_t>(), 0};
            for (const auto& row : rep.strata)
                if (row.key.zpat == ZPattern::ZppNonzero) zcheck.observed += row.orbits;
            zcheck.pass = zcheck.expected == zcheck.observed;
            rep.proof_checks.push_back(zcheck);
        }
    }
    return rep;
}

}  // namespace

OrbitReport enumerate_orbits(const StateSpace& space, const std::vector<MonodromyGen>& gens, EngineOptions opts) {
    if (space.dim > static_cast<std::size_t>(kExhaustiveCap))
        throw UsageError("state space " + space.label() + " has dimension " + std::to_string(space.dim) +
                         ", above the exhaustive cap of " + std::to_string(kExhaustiveCap) +
                         "; use classify_orbits");
    const Engine eng(space, gens);
    return assemble(space, eng, run_engine(space, eng, false, opts.workers), "enumerate");
}

OrbitReport classify_orbits(const StateSpace& space, const std::vector<MonodromyGen>& gens, EngineOptions opts) {
    const Engine eng(space, gens);
    return assemble(space, eng, run_engine(space, eng, true, opts.workers), "classify");
}

OrbitReport sl_extension_orbits(const SurfaceData& sd, const GeneratorConfig& cfg, ExtensionConvention ext,
                                EngineOptions opts) {
    GeneratorConfig c = cfg;
    c.case_id = CaseId::SL2R;
    const StateSpace sp = case_space(CaseId::SL2R, sd, cfg.bo_convention, ext);
    return enumerate_orbits(sp, generator_set(c, sd), opts);
}

OrbitReport pgl_orbits(const SurfaceData& sd, const GeneratorConfig& cfg, EngineOptions opts) {
    GeneratorConfig c = cfg;
    c.case_id = CaseId::PGL2R;
    const StateSpace sp = case_space(CaseId::PGL2R, sd, cfg.bo_convention);
    return enumerate_orbits(sp, generator_set(c, sd), opts);
}

}  // namespace pmono
