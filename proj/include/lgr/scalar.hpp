// Scalar ring k = Z[X^±1, Y^±1, Z^±1] / (X^2 = Y^2 = 1), the grading group Z^2
// and the bilinear form mu used by graded interchangers.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <string>

namespace lgr {

struct GradingVector {
    long p = 0;
    long q = 0;

    GradingVector operator+(const GradingVector& o) const { return {p + o.p, q + o.q}; }
    GradingVector operator-(const GradingVector& o) const { return {p - o.p, q - o.q}; }
    GradingVector& operator+=(const GradingVector& o) {
        p += o.p;
        q += o.q;
        return *this;
    }
    bool operator==(const GradingVector&) const = default;
    std::string to_string() const;
};

// X^x Y^y Z^z with x, y in {0, 1}.
struct UnitMonomial {
    int x = 0;
    int y = 0;
    long z = 0;

    UnitMonomial() = default;
    UnitMonomial(int x_, int y_, long z_) : x(x_ & 1), y(y_ & 1), z(z_) {}

    UnitMonomial operator*(const UnitMonomial& o) const { return {x ^ o.x, y ^ o.y, z + o.z}; }
    UnitMonomial inverse() const { return {x, y, -z}; }
    bool is_one() const { return x == 0 && y == 0 && z == 0; }
    auto operator<=>(const UnitMonomial&) const = default;
    // Renders "1", "X", "X*Y*Z^-2", ...
    std::string to_string() const;
};

UnitMonomial unit_inverse(const UnitMonomial& u);

// A unit of k of the form +-X^x Y^y Z^z.  Interchange signs of super
// polygraphs and negative rule scalars need the sign.
struct Unit {
    int sign = 1;
    UnitMonomial mono;

    Unit() = default;
    Unit(int s, UnitMonomial m) : sign(s < 0 ? -1 : 1), mono(m) {}
    explicit Unit(UnitMonomial m) : mono(m) {}

    Unit operator*(const Unit& o) const { return {sign * o.sign, mono * o.mono}; }
    Unit& operator*=(const Unit& o) { return *this = *this * o; }
    Unit inverse() const { return {sign, mono.inverse()}; }
    bool is_one() const { return sign == 1 && mono.is_one(); }
    bool operator==(const Unit&) const = default;
    std::string to_string() const;
};

GradingVector make_grading(long p, long q);

// mu((a,b),(c,d)) = X^{ac} Y^{bd} Z^{ad-bc}.
UnitMonomial mu(const GradingVector& g, const GradingVector& h);

class RingElement {
public:
    using Terms = std::map<UnitMonomial, mpz_class>;

    RingElement() = default;
    RingElement(long n);  // NOLINT(google-explicit-constructor): integers embed
    RingElement(const UnitMonomial& m, const mpz_class& c = 1);
    RingElement(const Unit& u);  // NOLINT(google-explicit-constructor)

    static RingElement zero() { return {}; }
    static RingElement one() { return RingElement(1L); }
    static RingElement X() { return RingElement(UnitMonomial(1, 0, 0)); }
    static RingElement Y() { return RingElement(UnitMonomial(0, 1, 0)); }
    static RingElement Z(long e = 1) { return RingElement(UnitMonomial(0, 0, e)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // A unit of the form +-monomial, if this element is one.
    bool as_unit(Unit& out) const;

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator-() const;
    RingElement operator*(const RingElement& o) const;
    RingElement& operator+=(const RingElement& o);
    RingElement& operator-=(const RingElement& o);
    RingElement& operator*=(const RingElement& o);
    bool operator==(const RingElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    std::string to_string() const;
    static RingElement parse(const std::string& text);

private:
    void add_term(const UnitMonomial& m, const mpz_class& c);
    Terms terms_;
};

}  // namespace lgr
