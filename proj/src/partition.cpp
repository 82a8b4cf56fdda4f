#include "tauwalk/partition.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace tw {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0 || (i + 1 < parts.size() && parts[i] < parts[i + 1]))
            throw std::invalid_argument("parts must be weakly decreasing and positive");
    }
}

long Partition::weight() const {
    long w = 0;
    for (int x : parts) w += x;
    return w;
}

std::strong_ordering Partition::operator<=>(const Partition& o) const {
    long wa = weight(), wb = o.weight();
    if (wa != wb) return wa <=> wb;
    // reverse-lexicographic: larger first part sorts earlier
    size_t n = std::max(parts.size(), o.parts.size());
    for (size_t i = 0; i < n; ++i) {
        int a = i < parts.size() ? parts[i] : 0;
        int b = i < o.parts.size() ? o.parts[i] : 0;
        if (a != b) return b <=> a;
    }
    return std::strong_ordering::equal;
}

std::string Partition::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) os << ',';
        os << parts[i];
    }
    return os.str();
}

Partition conjugate(const Partition& p) {
    std::vector<int> t;
    if (p.parts.empty()) return Partition{};
    t.resize(p.parts[0], 0);
    for (int x : p.parts)
        for (int j = 0; j < x; ++j) ++t[j];
    return Partition(std::move(t));
}

bool contains(const Partition& outer, const Partition& inner) {
    if (inner.length() > outer.length()) return false;
    for (int i = 1; i <= inner.length(); ++i)
        if (inner.part(i) > outer.part(i)) return false;
    return true;
}

FrobeniusCoords frobenius(const Partition& p) {
    FrobeniusCoords fc;
    Partition t = conjugate(p);
    for (int i = 1; i <= p.length() && p.part(i) >= i; ++i) {
        fc.alpha.push_back(p.part(i) - i);
        fc.beta.push_back(t.part(i) - i);
    }
    return fc;
}

Partition partition_from_frobenius(const FrobeniusCoords& fc) {
    if (fc.alpha.size() != fc.beta.size())
        throw std::invalid_argument("alpha/beta length mismatch");
    int r = static_cast<int>(fc.alpha.size());
    std::vector<int> parts;
    // rows through the diagonal
    for (int i = 0; i < r; ++i) parts.push_back(fc.alpha[i] + i + 1);
    // rows below: transpose of the beta hooks
    std::vector<int> cols(r);
    for (int i = 0; i < r; ++i) cols[i] = fc.beta[i] + i + 1;  // column lengths
    int max_col = r ? cols[0] : 0;
    for (int row = r + 1; row <= max_col; ++row) {
        int len = 0;
        for (int i = 0; i < r; ++i)
            if (cols[i] >= row) ++len;
        if (len) parts.push_back(len);
    }
    return Partition(std::move(parts));
}

MayaDiagram maya_from_partition(const Partition& p, int level, int window) {
    if (window < p.length())
        throw std::invalid_argument("window smaller than the partition length");
    MayaDiagram m;
    m.level = level;
    m.window = window;
    m.coords.reserve(window);
    // h_i = lambda_i - i + window; the physical site is h_i - window + level
    for (int i = 1; i <= window; ++i)
        m.coords.push_back(static_cast<long>(p.part(i)) - i + window);
    return m;
}

Partition partition_from_maya(const MayaDiagram& m) {
    std::vector<int> parts;
    for (int i = 1; i <= m.window; ++i) {
        long v = m.coords[i - 1] + i - m.window;
        if (v < 0) throw std::invalid_argument("coordinates below the packed tail");
        if (v > 0) parts.push_back(static_cast<int>(v));
    }
    return Partition(std::move(parts));
}

BoxMoves box_moves(const Partition& p) {
    BoxMoves mv;
    int l = p.length();
    for (int i = 1; i <= l + 1; ++i) {
        if (p.part(i) < p.part(i - 1) || i == 1) {
            std::vector<int> q = p.parts;
            if (i == l + 1)
                q.push_back(1);
            else
                ++q[i - 1];
            mv.addable.emplace_back(std::move(q));
        }
    }
    for (int i = 1; i <= l; ++i) {
        if (p.part(i) > p.part(i + 1)) {
            std::vector<int> q = p.parts;
            --q[i - 1];
            mv.removable.emplace_back(std::move(q));
        }
    }
    return mv;
}

bool is_strip(const Partition& outer, const Partition& inner, StripKind kind) {
    if (!contains(outer, inner)) return false;
    if (kind == StripKind::vertical) {
        for (int i = 1; i <= outer.length(); ++i)
            if (outer.part(i) - inner.part(i) > 1) return false;
        return true;
    }
    // horizontal: columns gain at most one box, i.e. rows interlace
    for (int i = 1; i <= outer.length(); ++i)
        if (outer.part(i + 1) > inner.part(i)) return false;
    return true;
}

Int standard_tableaux_count(const Partition& p) {
    // |lambda|! * Delta(h) / prod h_i! over the window h_i = lambda_i - i + l
    int l = p.length();
    if (l == 0) return 1;
    std::vector<long> h(l);
    for (int i = 1; i <= l; ++i) h[i - 1] = p.part(i) - i + l;
    Int num = factorial(p.weight());
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j) num *= (h[i] - h[j]);
    Int den = 1;
    for (int i = 0; i < l; ++i) den *= factorial(h[i]);
    return num / den;
}

namespace {
void gen_partitions(int rest, int max_part, std::vector<int>& cur,
                    std::vector<Partition>& out) {
    if (rest == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int p = std::min(rest, max_part); p >= 1; --p) {
        cur.push_back(p);
        gen_partitions(rest - p, p, cur, out);
        cur.pop_back();
    }
}
}  // namespace

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    std::vector<int> cur;
    gen_partitions(n, n, cur, out);
    return out;
}

std::vector<Partition> partitions_up_to(int cap) {
    std::vector<Partition> out;
    for (int n = 0; n <= cap; ++n) {
        auto pn = partitions_of(n);
        out.insert(out.end(), pn.begin(), pn.end());
    }
    return out;
}

std::vector<Partition> strip_additions(const Partition& p, StripKind kind, int max_boxes) {
    std::vector<Partition> out;
    std::vector<int> cur;
    if (kind == StripKind::vertical) {
        // at most one new box per row; length can grow by up to the budget
        std::function<void(int, int)> rec = [&](int row, int budget) {
            int base = p.part(row);
            if (base == 0) {
                out.emplace_back(std::vector<int>(cur));
                // optional fresh rows of one box each, bounded by monotonicity
                if (budget > 0 && (row == 1 || cur[row - 2] >= 1)) {
                    cur.push_back(1);
                    rec(row + 1, budget - 1);
                    cur.pop_back();
                }
                return;
            }
            for (int add = 0; add <= 1 && add <= budget; ++add) {
                int v = base + add;
                if (row > 1 && v > cur[row - 2]) continue;
                cur.push_back(v);
                rec(row + 1, budget - add);
                cur.pop_back();
            }
        };
        rec(1, max_boxes);
    } else {
        // rows interlace: p_i <= mu_i <= min(mu_{i-1}, p_{i-1}); one new row at most
        std::function<void(int, int)> rec = [&](int row, int budget) {
            int base = p.part(row);
            int hi = row == 1 ? base + budget
                              : std::min(cur[row - 2], p.part(row - 1));
            if (base == 0) out.emplace_back(std::vector<int>(cur));
            for (int v = std::max(base, 1); v <= hi && v - base <= budget; ++v) {
                cur.push_back(v);
                if (base == 0) {
                    out.emplace_back(std::vector<int>(cur));  // new last row ends it
                } else {
                    rec(row + 1, budget - (v - base));
                }
                cur.pop_back();
            }
        };
        rec(1, max_boxes);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Partition> strip_removals(const Partition& p, StripKind kind) {
    // enumerate inner shapes mu with p/mu a strip; |p| bounded so brute rows work
    std::vector<Partition> out;
    std::vector<int> cur;
    int l = p.length();
    std::function<void(int)> rec = [&](int row) {
        if (row > l) {
            out.emplace_back(std::vector<int>(cur));
            return;
        }
        int lo, hi;
        if (kind == StripKind::vertical) {
            lo = p.part(row) - 1;
            hi = p.part(row);
        } else {
            lo = p.part(row + 1);
            hi = p.part(row);
        }
        lo = std::max(lo, 0);
        if (row > 1) hi = std::min(hi, cur[row - 2]);
        for (int v = hi; v >= lo; --v) {
            if (kind == StripKind::horizontal && v < p.part(row + 1)) break;
            cur.push_back(v);
            rec(row + 1);
            cur.pop_back();
        }
    };
    rec(1);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::vector<Partition> ok;
    for (auto& m : out)
        if (is_strip(p, m, kind)) ok.push_back(m);
    return ok;
}

Partition parse_partition(const std::string& text) {
    std::vector<int> parts;
    std::string tok;
    std::istringstream is(text);
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        parts.push_back(std::stoi(tok));
    }
    return Partition(std::move(parts));
}

}  // namespace tw
