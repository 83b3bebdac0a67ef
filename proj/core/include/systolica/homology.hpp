#pragma once

#include <cstdint>
#include <vector>

#include "systolica/surface.hpp"

namespace systolica {

/// Fixed-width bit vector over GF(2).
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int bits) : bits_(bits), w_(static_cast<size_t>((bits + 63) / 64), 0) {}

    int bit_count() const { return bits_; }
    bool test(int i) const { return (w_[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1u; }
    void set(int i) { w_[static_cast<size_t>(i >> 6)] |= (std::uint64_t{1} << (i & 63)); }

    BitVec& operator^=(const BitVec& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }

    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }

    /// Index of the lowest set bit, or -1.
    int lowest_set() const;

    bool operator==(const BitVec&) const = default;

private:
    int bits_ = 0;
    std::vector<std::uint64_t> w_;
};

/// GF(2) homology classes of edge loops on a closed connected surface,
/// realized as per-edge signature vectors.
///
/// Construction is the tree-cotree scheme: a spanning tree assigns every
/// non-tree edge a fundamental cycle; the face boundaries span the trivial
/// classes, and reduced row echelon elimination over GF(2) quotients them
/// out. Tree edges carry the zero signature, so the class of any closed
/// walk is the XOR of its edge signatures.
class Z2HomologyBasis {
public:
    static Z2HomologyBasis compute(const TriangulatedSurface& s);

    /// Dimension of H_1(S; Z/2); equals 2*genus for closed orientable S.
    int rank() const { return rank_; }
    const BitVec& edge_signature(int edge) const { return sig_[static_cast<size_t>(edge)]; }
    bool tree_edge(int edge) const { return tree_[static_cast<size_t>(edge)] != 0; }
    const TriangulatedSurface& host() const { return *host_; }

    /// XOR of edge signatures along the walk; zero iff the walk is
    /// null-homologous over Z/2.
    BitVec loop_signature(const EdgeLoop& p) const;

private:
    const TriangulatedSurface* host_ = nullptr;
    int rank_ = 0;
    std::vector<BitVec> sig_;
    std::vector<char> tree_;
};

inline BitVec cycle_signature(const Z2HomologyBasis& basis, const EdgeLoop& p) {
    return basis.loop_signature(p);
}

} // namespace systolica
