#pragma once

#include <cmath>
#include <compare>
#include <stdexcept>
#include <string>

namespace fitzcalc {

/// A real number extended with +inf and -inf.
///
/// Infinities are tagged rather than encoded as IEEE infinities so that the
/// undefined sum (+inf) + (-inf) is detected and rejected instead of turning
/// into a silent NaN.
class ExtReal {
public:
    enum class Kind : unsigned char { NegInf, Finite, PosInf };

    constexpr ExtReal() = default;
    constexpr ExtReal(double v) : kind_(Kind::Finite), v_(v) {}  // NOLINT: implicit by design

    static constexpr ExtReal pos_inf() { return ExtReal(Kind::PosInf); }
    static constexpr ExtReal neg_inf() { return ExtReal(Kind::NegInf); }

    /// Builds from a raw double, mapping IEEE infinities to the tagged ones.
    /// NaN is rejected.
    static ExtReal from_double(double v) {
        if (std::isnan(v)) throw std::domain_error("ExtReal: NaN is not an extended real");
        if (std::isinf(v)) return v > 0 ? pos_inf() : neg_inf();
        return ExtReal(v);
    }

    constexpr Kind kind() const { return kind_; }
    constexpr bool finite() const { return kind_ == Kind::Finite; }
    constexpr bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    constexpr bool is_neg_inf() const { return kind_ == Kind::NegInf; }

    /// Finite payload. Calling this on an infinity is a logic error.
    double value() const {
        if (!finite()) throw std::logic_error("ExtReal::value() on an infinity");
        return v_;
    }

    /// IEEE view (+-inf for infinities). Useful for output and plotting only.
    constexpr double to_double() const {
        switch (kind_) {
            case Kind::PosInf: return HUGE_VAL;
            case Kind::NegInf: return -HUGE_VAL;
            default: return v_;
        }
    }

    constexpr ExtReal operator-() const {
        switch (kind_) {
            case Kind::PosInf: return neg_inf();
            case Kind::NegInf: return pos_inf();
            default: return ExtReal(-v_);
        }
    }

    friend ExtReal operator+(ExtReal a, ExtReal b) {
        if (a.finite() && b.finite()) return ExtReal(a.v_ + b.v_);
        if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
            throw std::domain_error("ExtReal: (+inf) + (-inf) is undefined");
        return a.finite() ? b : a;
    }
    friend ExtReal operator-(ExtReal a, ExtReal b) { return a + (-b); }

    /// Multiplication by a finite real; 0 * (+-inf) is rejected.
    friend ExtReal operator*(double s, ExtReal a) {
        if (a.finite()) return ExtReal(s * a.v_);
        if (s == 0.0) throw std::domain_error("ExtReal: 0 * inf is undefined");
        return (s > 0) == a.is_pos_inf() ? pos_inf() : neg_inf();
    }
    friend ExtReal operator*(ExtReal a, double s) { return s * a; }

    ExtReal& operator+=(ExtReal b) { return *this = *this + b; }

    friend constexpr bool operator==(ExtReal a, ExtReal b) {
        return a.kind_ == b.kind_ && (!a.finite() || a.v_ == b.v_);
    }
    friend constexpr std::strong_ordering operator<=>(ExtReal a, ExtReal b) {
        if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
        if (!a.finite()) return std::strong_ordering::equal;
        if (a.v_ < b.v_) return std::strong_ordering::less;
        if (a.v_ > b.v_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string str() const;

private:
    constexpr explicit ExtReal(Kind k) : kind_(k), v_(0.0) {}

    Kind kind_ = Kind::Finite;
    double v_ = 0.0;
};

inline ExtReal max(ExtReal a, ExtReal b) { return a < b ? b : a; }
inline ExtReal min(ExtReal a, ExtReal b) { return b < a ? b : a; }

}  // namespace fitzcalc
