#pragma once

/**
 * @file qarith.hpp
 * @brief q-numbers, the deformation parameter and the spectral parameter.
 *
 * A q-number is evaluated in the form
 *
 *     [z]_q = sinh(h z / 2) / sinh(h / 2),   q = e^h,
 *
 * which is entire in z and stays well conditioned for complex arguments. At
 * q = 1 the limit value [z]_1 = z is returned directly.
 *
 * The spectral parameter lambda is kept exact whenever possible: a rational
 * real part together with a rational multiple of pi/h for the imaginary part.
 * Every reducibility and equivalence decision reduces to integrality and
 * parity tests on these two rationals, so nothing downstream compares floats
 * against zero.
 */

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include "errors.hpp"
#include "rational.hpp"

namespace qdegen {

using Complex = std::complex<double>;

/// Deformation parameter q > 0 with h = ln q and a = q^{1/2} + q^{-1/2}.
class QParam {
public:
    explicit QParam(double q = 2.0) : q_(q) {
        if (!(q > 0.0) || !std::isfinite(q))
            throw InvalidParameter("q must be a finite positive number");
        h_ = std::log(q);
        a_ = std::sqrt(q) + 1.0 / std::sqrt(q);
    }

    double q() const noexcept { return q_; }
    double h() const noexcept { return h_; }
    double a() const noexcept { return a_; }

    /// q == 1 exactly; q-numbers take their limit values.
    bool classical() const noexcept { return q_ == 1.0; }

    bool operator==(const QParam& o) const noexcept { return q_ == o.q_; }

private:
    double q_;
    double h_ = 0.0;
    double a_ = 2.0;
};

/// [b]_q for real b.
inline double qnum(const QParam& p, double b) {
    if (p.classical()) return b;
    return std::sinh(p.h() * b / 2.0) / std::sinh(p.h() / 2.0);
}

/// [z]_q for complex z.
inline Complex qnum_eval(const QParam& p, Complex z) {
    if (p.classical()) return z;
    return std::sinh(p.h() * z / 2.0) / std::sinh(p.h() / 2.0);
}

/// Relation between a spectral parameter and its normalized form.
enum class SpectralRelation {
    identical,       ///< only shifts by 4 pi i / h were used
    equivalent_flip  ///< an odd number of 2 pi i / h shifts was used
};

inline const char* to_string(SpectralRelation r) {
    return r == SpectralRelation::identical ? "identical" : "equivalent_flip";
}

/**
 * lambda = re + i * im_t * pi / h with rational re, im_t (exact mode), or a
 * plain complex value (inexact mode).
 */
class SpectralParam {
public:
    SpectralParam() : SpectralParam(exact(Rational(0))) {}

    static SpectralParam exact(Rational re, Rational im_t = Rational(0)) {
        SpectralParam s(Tag{});
        s.exact_ = Parts{re, im_t};
        return s;
    }

    static SpectralParam inexact(Complex value) {
        SpectralParam s(Tag{});
        s.value_ = value;
        return s;
    }

    bool is_exact() const noexcept { return exact_.has_value(); }

    const Rational& re() const {
        if (!exact_) throw InexactSpectralParam();
        return exact_->re;
    }

    /// Imaginary part in units of pi/h.
    const Rational& im_t() const {
        if (!exact_) throw InexactSpectralParam();
        return exact_->im_t;
    }

    /// Stored value of an inexact parameter.
    Complex inexact_value() const {
        if (exact_) throw InvalidParameter("spectral parameter is exact");
        return *value_;
    }

    /// Numeric value of lambda for a given q. An exact lambda with nonzero
    /// im_t has no value at q = 1.
    Complex value(const QParam& p) const {
        if (!exact_) return *value_;
        if (exact_->im_t == Rational(0)) return {to_double(exact_->re), 0.0};
        if (p.classical())
            throw InvalidParameter("Im(lambda) = im_t*pi/h is undefined at q = 1");
        return {to_double(exact_->re),
                to_double(exact_->im_t) * std::numbers::pi / p.h()};
    }

    bool is_real() const {
        if (exact_) return exact_->im_t == Rational(0);
        return value_->imag() == 0.0;
    }

    SpectralParam operator-() const {
        if (exact_) return exact(-exact_->re, -exact_->im_t);
        return inexact(-*value_);
    }

    SpectralParam operator+(const Rational& c) const {
        if (exact_) return exact(exact_->re + c, exact_->im_t);
        return inexact(*value_ + to_double(c));
    }

    bool operator==(const SpectralParam& o) const {
        if (exact_ && o.exact_) return exact_->re == o.exact_->re && exact_->im_t == o.exact_->im_t;
        if (!exact_ && !o.exact_) return *value_ == *o.value_;
        return false;
    }

    std::string to_string() const {
        if (exact_) {
            std::string s = qdegen::to_string(exact_->re);
            if (exact_->im_t != Rational(0)) s += " + (" + qdegen::to_string(exact_->im_t) + ")*pi*i/h";
            return s;
        }
        return std::to_string(value_->real()) + " + " + std::to_string(value_->imag()) + "i";
    }

private:
    struct Tag {};
    struct Parts {
        Rational re;
        Rational im_t;
    };
    explicit SpectralParam(Tag) {}

    std::optional<Parts> exact_;
    std::optional<Complex> value_;
};

/// [lambda + c]_q = 0, decided exactly: re(lambda) + c = 0 and im_t even.
inline bool qnum_vanishes(const SpectralParam& lam, const Rational& c, const QParam& = QParam{}) {
    if (!lam.is_exact()) throw InexactSpectralParam();
    if (lam.re() + c != Rational(0)) return false;
    return is_integer(lam.im_t()) && parity(lam.im_t()) == 0;
}

/**
 * [lambda + c]_q. For exact lambda the real part lambda + c is formed in
 * rational arithmetic, integral im_t uses exact quarter-period phases, and a
 * vanishing value is returned as an exact zero.
 */
inline Complex qnum_shift(const QParam& p, const SpectralParam& lam, const Rational& c) {
    if (!lam.is_exact()) return qnum_eval(p, lam.inexact_value() + to_double(c));

    const Rational x = lam.re() + c;
    const Rational& t = lam.im_t();
    if (t == Rational(0)) return {qnum(p, to_double(x)), 0.0};
    if (p.classical())
        throw InvalidParameter("Im(lambda) = im_t*pi/h is undefined at q = 1");
    if (qnum_vanishes(lam, c, p)) return {0.0, 0.0};

    // sinh(u + i theta) = sinh u cos theta + i cosh u sin theta
    const double u = p.h() * to_double(x) / 2.0;
    double cs = 0.0, sn = 0.0;
    if (is_integer(t)) {
        auto k = t.numerator() % 4;
        if (k < 0) k += 4;
        constexpr double cos_tab[4] = {1.0, 0.0, -1.0, 0.0};
        constexpr double sin_tab[4] = {0.0, 1.0, 0.0, -1.0};
        cs = cos_tab[k];
        sn = sin_tab[k];
    } else {
        const double theta = to_double(t) * std::numbers::pi / 2.0;
        cs = std::cos(theta);
        sn = std::sin(theta);
    }
    const double denom = std::sinh(p.h() / 2.0);
    return {std::sinh(u) * cs / denom, std::cosh(u) * sn / denom};
}

struct NormalizedSpectral {
    SpectralParam lambda;
    SpectralRelation relation = SpectralRelation::identical;
};

/// Reduces im_t into [0, 2) using the period 4 pi i/h (identity) and the
/// half period 2 pi i/h (equivalence with a sign flip of every q-number).
inline NormalizedSpectral normalize_spectral(const SpectralParam& lam) {
    if (!lam.is_exact()) throw InexactSpectralParam();
    const Rational& t = lam.im_t();
    const std::int64_t half_periods = floor(t / Rational(2));
    const Rational reduced = t - Rational(2 * half_periods);
    const bool flip = (half_periods % 2) != 0;
    return {SpectralParam::exact(lam.re(), reduced),
            flip ? SpectralRelation::equivalent_flip : SpectralRelation::identical};
}

}  // namespace qdegen
