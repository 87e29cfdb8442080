#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace stokestree {

/// Integer multi-index k = (k1,k2,k3).
struct MultiIndex {
    int k[3]{0, 0, 0};
    constexpr int norm() const { return k[0] + k[1] + k[2]; }
    constexpr int operator[](int axis) const { return k[axis]; }
    friend constexpr bool operator==(const MultiIndex& a, const MultiIndex& b) {
        return a.k[0] == b.k[0] && a.k[1] == b.k[1] && a.k[2] == b.k[2];
    }
};

/// Graded-lexicographic enumeration of all multi-indices with ||k|| <= pmax,
/// plus precomputed shift lookups. Entry count is (pmax+1)(pmax+2)(pmax+3)/6.
///
/// Flattened coefficient arrays are allocated with one extra slot at position
/// size() (`zero_slot`) pinned to 0.0; every hot-path lookup that would leave
/// the table maps there, which realizes the convention b^k = 0 whenever some
/// k_i < 0 or ||k|| > pmax without branching.
class MultiIndexTable {
public:
    static constexpr int kInvalid = -1;

    explicit MultiIndexTable(int pmax) : pmax_(pmax) {
        if (pmax < 0) throw std::invalid_argument("MultiIndexTable: pmax must be >= 0");
        const int side = pmax + 1;
        grade_offset_.assign(pmax + 2, 0);
        dense_.assign(static_cast<std::size_t>(side) * side * side, kInvalid);

        for (int s = 0; s <= pmax; ++s) {
            grade_offset_[s] = static_cast<int>(entries_.size());
            for (int k1 = 0; k1 <= s; ++k1)
                for (int k2 = 0; k2 + k1 <= s; ++k2) {
                    const int k3 = s - k1 - k2;
                    dense_[dense_pos(k1, k2, k3)] = static_cast<int>(entries_.size());
                    entries_.push_back(MultiIndex{{k1, k2, k3}});
                }
        }
        grade_offset_[pmax + 1] = static_cast<int>(entries_.size());

        const int n = size();
        const int zero = zero_slot();
        auto at = [&](int k1, int k2, int k3) {
            const int f = flat_index(k1, k2, k3);
            return f == kInvalid ? zero : f;
        };

        up1_.resize(3 * n);
        dn1_.resize(3 * n);
        dn2_.resize(3 * n);
        updn_.resize(9 * n);
        upup_.resize(6 * n);
        upupdn_.resize(18 * n);
        mono_axis_.assign(n, 0);
        mono_parent_.assign(n, 0);

        for (int e = 0; e < n; ++e) {
            const MultiIndex& mk = entries_[e];
            int c[3] = {mk.k[0], mk.k[1], mk.k[2]};
            for (int a = 0; a < 3; ++a) {
                c[a] += 1;
                up1_[3 * e + a] = at(c[0], c[1], c[2]);
                c[a] -= 2;
                dn1_[3 * e + a] = at(c[0], c[1], c[2]);
                c[a] -= 1;
                dn2_[3 * e + a] = at(c[0], c[1], c[2]);
                c[a] += 2;
            }
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    c[i] += 1;
                    c[j] -= 1;
                    updn_[(3 * e + i) * 3 + j] = at(c[0], c[1], c[2]);
                    c[j] += 1;
                    c[i] -= 1;
                }
            for (int i = 0; i < 3; ++i)
                for (int j = i; j < 3; ++j) {
                    const int sidx = sym_index(i, j);
                    c[i] += 1;
                    c[j] += 1;
                    upup_[6 * e + sidx] = at(c[0], c[1], c[2]);
                    for (int l = 0; l < 3; ++l) {
                        c[l] -= 1;
                        upupdn_[(6 * e + sidx) * 3 + l] = at(c[0], c[1], c[2]);
                        c[l] += 1;
                    }
                    c[j] -= 1;
                    c[i] -= 1;
                }
            if (e > 0) {
                int axis = 0;
                while (mk.k[axis] == 0) ++axis;
                mono_axis_[e] = axis;
                mono_parent_[e] = dn1_[3 * e + axis];
            }
        }
    }

    int pmax() const { return pmax_; }
    int size() const { return static_cast<int>(entries_.size()); }
    int zero_slot() const { return size(); }

    /// Number of entries with ||k|| <= p (a prefix of the graded ordering).
    int size_at(int p) const {
        if (p < 0 || p > pmax_) throw std::invalid_argument("size_at: order out of range");
        return grade_offset_[p + 1];
    }

    int grade_begin(int s) const { return grade_offset_[s]; }
    int grade_end(int s) const { return grade_offset_[s + 1]; }

    const MultiIndex& operator[](int flat) const { return entries_[flat]; }

    /// Flat position of (k1,k2,k3), or kInvalid if outside the table.
    int flat_index(int k1, int k2, int k3) const {
        if (k1 < 0 || k2 < 0 || k3 < 0 || k1 + k2 + k3 > pmax_) return kInvalid;
        return dense_[dense_pos(k1, k2, k3)];
    }

    /// Shift lookup k -> k + delta*e_axis with delta in {-2,-1,+1,+2};
    /// kInvalid when the shifted index falls outside the table.
    int shift(int flat, int axis, int delta) const {
        if (axis < 0 || axis > 2) throw std::invalid_argument("shift: bad axis");
        int sentinel_mapped;
        switch (delta) {
            case 1: sentinel_mapped = up1_[3 * flat + axis]; break;
            case -1: sentinel_mapped = dn1_[3 * flat + axis]; break;
            case -2: sentinel_mapped = dn2_[3 * flat + axis]; break;
            case 2: {
                const MultiIndex& mk = entries_[flat];
                int c[3] = {mk.k[0], mk.k[1], mk.k[2]};
                c[axis] += 2;
                return flat_index(c[0], c[1], c[2]);
            }
            default: throw std::invalid_argument("shift: delta must be in {-2,-1,1,2}");
        }
        return sentinel_mapped == zero_slot() ? kInvalid : sentinel_mapped;
    }

    // Hot-path lookups; out-of-table maps to zero_slot().
    int up(int flat, int axis) const { return up1_[3 * flat + axis]; }
    int down(int flat, int axis) const { return dn1_[3 * flat + axis]; }
    int down2(int flat, int axis) const { return dn2_[3 * flat + axis]; }
    int up_down(int flat, int i, int j) const { return updn_[(3 * flat + i) * 3 + j]; }
    int up_up(int flat, int i, int j) const { return upup_[6 * flat + sym_index(i, j)]; }
    int up_up_down(int flat, int i, int j, int l) const {
        return upupdn_[(6 * flat + sym_index(i, j)) * 3 + l];
    }

    // Monomial chain: entry e (>=1) equals entry mono_parent(e) times the
    // displacement component mono_axis(e).
    int mono_axis(int flat) const { return mono_axis_[flat]; }
    int mono_parent(int flat) const { return mono_parent_[flat]; }

    /// Position of the symmetric pair (i,j), i,j in 0..2, in 6-slot storage.
    static constexpr int sym_index(int i, int j) {
        constexpr int lut[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
        return lut[i][j];
    }

private:
    std::size_t dense_pos(int k1, int k2, int k3) const {
        const std::size_t side = static_cast<std::size_t>(pmax_) + 1;
        return (static_cast<std::size_t>(k1) * side + k2) * side + k3;
    }

    int pmax_;
    std::vector<MultiIndex> entries_;
    std::vector<int> grade_offset_;
    std::vector<int> dense_;
    std::vector<int32_t> up1_, dn1_, dn2_, updn_, upup_, upupdn_;
    std::vector<int32_t> mono_axis_, mono_parent_;
};

}  // namespace stokestree
