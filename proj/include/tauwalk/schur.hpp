// Schur and skew Schur functions in higher times and at the special points.
#pragma once

#include <vector>

#include "tauwalk/numeric.hpp"
#include "tauwalk/partition.hpp"

namespace tw {

// Higher times t_1..t_K, exact.
struct TimeVector {
    std::vector<Rat> t;
    int K() const { return static_cast<int>(t.size()); }
    Rat tm(int m) const { return (m >= 1 && m <= K()) ? t[m - 1] : Rat(0); }
};

// t_m = (1/m) sum_i x_i^m, truncated at degree K.
TimeVector powersums(const std::vector<Rat>& x, int K);
// (1, 0, 0, ...) and (a/1, a/2, ..., a/K)
TimeVector t_infinity_vector(int K);
TimeVector t_a1_vector(const Rat& a, int K);

// h_k from the generating function exp(sum t_m z^m); h_{-1}=0, h_0=1.
std::vector<Rat> elementary_schur_upto(int K, const TimeVector& t);
Rat elementary_schur(int k, const TimeVector& t);

Rat schur(const Partition& lam, const TimeVector& t);
Rat skew_schur(const Partition& lam, const Partition& mu, const TimeVector& t);

// Determinant-ratio route det(x_i^{lam_j - j + n}) / det(x_i^{n - j}).
Rat schur_bialternant(const Partition& lam, const std::vector<Rat>& x);

// Special values. The rational ones are exact; q-points evaluate in double.
Rat schur_tinfty(const Partition& lam);               // Delta(h)/prod h_i!
Rat schur_ta1(const Partition& lam, const Rat& a);    // hook type, exact for rational a
double schur_tinfq(const Partition& lam, double q, int window = -1);
double schur_taq(const Partition& lam, double a, double q);

struct SpecialPoint {
    enum class Tag { t_infinity, t_a1, t_inf_q, t_aq, powersums } tag;
    Rat a;                 // t_a1 / t_aq parameter
    double q = 0;          // q-points
    std::vector<Rat> x;    // powersums variables
};
// Exact where the point permits (t_infinity, t_a1, powersums); otherwise the
// double value is carried in the rational return via best-effort conversion.
Rat schur_special_exact(const Partition& lam, const SpecialPoint& p);
double schur_special(const Partition& lam, const SpecialPoint& p);

double log_schur_tinfty(const Partition& lam);

// Sorted h-coordinates with O(length) per box move; the hill-climbing core.
class IncrementalLogSchur {
  public:
    IncrementalLogSchur(const Partition& lam, int window);

    double log_value() const { return log_pairs_ - log_facts_; }
    int window() const { return static_cast<int>(h_.size()); }
    long coord(int row) const { return h_[row - 1]; }  // 1-based

    // Apply lambda_row += dir (dir = +1 add, -1 remove); returns the delta of
    // log_value. Caller guarantees the move keeps a valid partition.
    double move(int row, int dir);
    // Delta without applying.
    double peek(int row, int dir) const;

    Partition to_partition() const;

  private:
    std::vector<long> h_;  // strictly decreasing
    double log_pairs_ = 0, log_facts_ = 0;
};

}  // namespace tw
