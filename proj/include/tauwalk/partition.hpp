// Partitions, Frobenius coordinates, Maya diagrams, strips, box moves.
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tauwalk/numeric.hpp"

namespace tw {

// Weakly decreasing positive parts; empty vector is the zero partition.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> p);

    long weight() const;                 // |lambda|
    int length() const { return static_cast<int>(parts.size()); }
    int part(int i) const {              // 1-based, 0 beyond the length
        return (i >= 1 && i <= length()) ? parts[i - 1] : 0;
    }
    bool is_zero() const { return parts.empty(); }

    bool operator==(const Partition&) const = default;
    // Canonical order: by weight, then reverse-lexicographic on parts, so the
    // single-row partition comes first within its weight class.
    std::strong_ordering operator<=>(const Partition& o) const;

    std::string str() const;             // "4,3,1"; "" for zero
};

Partition conjugate(const Partition& p);
bool contains(const Partition& outer, const Partition& inner);

struct FrobeniusCoords {
    std::vector<int> alpha, beta;
    bool operator==(const FrobeniusCoords&) const = default;
};

FrobeniusCoords frobenius(const Partition& p);
Partition partition_from_frobenius(const FrobeniusCoords& fc);

// Finite window of particle coordinates h_i = lambda_i - i + N on a level-n
// Maya diagram; the packed tail below and empty head above are implicit.
struct MayaDiagram {
    int level = 0;
    int window = 0;
    std::vector<long> coords;  // strictly decreasing, length == window
    bool operator==(const MayaDiagram&) const = default;
};

MayaDiagram maya_from_partition(const Partition& p, int level, int window);
Partition partition_from_maya(const MayaDiagram& m);

// Corner moves: the partitions reachable by adding/removing one box.
struct BoxMoves {
    std::vector<Partition> addable, removable;
};
BoxMoves box_moves(const Partition& p);

enum class StripKind { vertical, horizontal };

// True iff inner is contained in outer and outer/inner has at most one box per
// row (vertical) or per column (horizontal); the empty strip counts.
bool is_strip(const Partition& outer, const Partition& inner, StripKind kind);

Int standard_tableaux_count(const Partition& p);  // d(lambda)

// All partitions of n in canonical (reverse-lexicographic) order.
std::vector<Partition> partitions_of(int n);
// All partitions with |lambda| <= cap, grouped by weight, canonical order.
std::vector<Partition> partitions_up_to(int cap);

// Partitions obtained from p by adding (resp. removing) a strip of the given
// orientation with at most max_boxes boxes; includes p itself (empty strip).
std::vector<Partition> strip_additions(const Partition& p, StripKind kind, int max_boxes);
std::vector<Partition> strip_removals(const Partition& p, StripKind kind);

Partition parse_partition(const std::string& text);  // "4,3,1"; "" -> zero

struct PartitionHash {
    size_t operator()(const Partition& p) const {
        size_t h = 1469598103934665603ULL;
        for (int x : p.parts) {
            h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

}  // namespace tw
