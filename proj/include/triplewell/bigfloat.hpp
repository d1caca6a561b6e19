#pragma once

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "triplewell/errors.hpp"

namespace triplewell {

/// Correctly rounded arbitrary-precision real backed by MPFR.
///
/// Every value carries its own precision in bits. Binary operators allocate
/// the result at the wider of the two operand precisions; in-place operators
/// keep the precision of the target. Hot loops should work on `raw()`
/// handles with the mpfr C API instead of going through the operators.
class BigFloat {
public:
    static constexpr mpfr_prec_t default_precision = 128;

    BigFloat() {
        mpfr_init2(v_, default_precision);
        mpfr_set_zero(v_, 1);
    }
    explicit BigFloat(mpfr_prec_t prec) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_zero(v_, 1);
    }
    BigFloat(double x, mpfr_prec_t prec) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    BigFloat(int x, mpfr_prec_t prec) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_si(v_, x, MPFR_RNDN);
    }

    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    /// Parses a decimal string ("20", "-1.5", "1e-13"). Throws
    /// InvalidParameterError if the string is not a complete number.
    static BigFloat from_string(const std::string& text, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    /// Value re-rounded to a different precision.
    BigFloat rounded_to(mpfr_prec_t prec) const {
        BigFloat r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }

    /// -1, 0, +1. NaN reports 0.
    int sign() const {
        if (!is_finite() && is_nan()) return 0;
        if (is_zero()) return 0;
        return mpfr_signbit(v_) ? -1 : 1;
    }

    /// Binary exponent e with 0.5 <= |x| / 2^e < 1. Only valid for
    /// finite nonzero values.
    mpfr_exp_t exponent2() const { return mpfr_get_exp(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Fixed-point decimal string with exactly `decimals` digits after the
    /// point, correctly rounded.
    std::string to_fixed(int decimals) const;

    /// Scientific decimal string with `sig_after_point` digits after the
    /// leading digit.
    std::string to_sci(int sig_after_point) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    BigFloat& operator+=(const BigFloat& o) {
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator-=(const BigFloat& o) {
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator*=(const BigFloat& o) {
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator/=(const BigFloat& o) {
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator*=(double d) {
        mpfr_mul_d(v_, v_, d, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator/=(double d) {
        mpfr_div_d(v_, v_, d, MPFR_RNDN);
        return *this;
    }

    BigFloat operator-() const {
        BigFloat r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(join(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(join(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(join(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r(join(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    friend BigFloat operator*(const BigFloat& a, double d) {
        BigFloat r(a.precision());
        mpfr_mul_d(r.v_, a.v_, d, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(double d, const BigFloat& a) { return a * d; }
    friend BigFloat operator/(const BigFloat& a, double d) {
        BigFloat r(a.precision());
        mpfr_div_d(r.v_, a.v_, d, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator+(const BigFloat& a, double d) {
        BigFloat r(a.precision());
        mpfr_add_d(r.v_, a.v_, d, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator+(double d, const BigFloat& a) { return a + d; }
    friend BigFloat operator-(const BigFloat& a, double d) {
        BigFloat r(a.precision());
        mpfr_sub_d(r.v_, a.v_, d, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(double d, const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_d_sub(r.v_, d, a.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }

    friend bool operator<(const BigFloat& a, double d) { return mpfr_cmp_d(a.v_, d) < 0; }
    friend bool operator>(const BigFloat& a, double d) { return mpfr_cmp_d(a.v_, d) > 0; }
    friend bool operator<=(const BigFloat& a, double d) { return mpfr_cmp_d(a.v_, d) <= 0; }
    friend bool operator>=(const BigFloat& a, double d) { return mpfr_cmp_d(a.v_, d) >= 0; }
    friend bool operator==(const BigFloat& a, double d) { return mpfr_cmp_d(a.v_, d) == 0; }

private:
    static mpfr_prec_t clamp(mpfr_prec_t p) { return std::max<mpfr_prec_t>(p, MPFR_PREC_MIN); }
    static mpfr_prec_t join(const BigFloat& a, const BigFloat& b) {
        return std::max(a.precision(), b.precision());
    }

    mpfr_t v_;
};

inline BigFloat abs(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

inline BigFloat sqrt(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

/// 10^e at the given precision.
inline BigFloat pow10(long e, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_ui(r.raw(), 10, MPFR_RNDN);
    mpfr_pow_si(r.raw(), r.raw(), e, MPFR_RNDN);
    return r;
}

}  // namespace triplewell
