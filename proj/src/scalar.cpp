// Scalar ring arithmetic, mu, and the textual form of ring elements.
#include "lgr/scalar.hpp"

#include <cctype>
#include <sstream>

#include "lgr/errors.hpp"

namespace lgr {

std::string GradingVector::to_string() const {
    return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

GradingVector make_grading(long p, long q) { return {p, q}; }

std::string UnitMonomial::to_string() const {
    std::string out;
    auto append = [&](const std::string& s) {
        if (!out.empty()) out += "*";
        out += s;
    };
    if (x) append("X");
    if (y) append("Y");
    if (z == 1) {
        append("Z");
    } else if (z != 0) {
        append("Z^" + std::to_string(z));
    }
    return out.empty() ? "1" : out;
}

UnitMonomial unit_inverse(const UnitMonomial& u) { return u.inverse(); }

std::string Unit::to_string() const {
    std::string m = mono.to_string();
    return sign < 0 ? "-" + m : m;
}

UnitMonomial mu(const GradingVector& g, const GradingVector& h) {
    const long a = g.p, b = g.q, c = h.p, d = h.q;
    return {static_cast<int>((a * c) & 1), static_cast<int>((b * d) & 1), a * d - b * c};
}

RingElement::RingElement(long n) {
    if (n != 0) terms_[UnitMonomial()] = n;
}

RingElement::RingElement(const UnitMonomial& m, const mpz_class& c) { add_term(m, c); }

RingElement::RingElement(const Unit& u) { add_term(u.mono, u.sign); }

void RingElement::add_term(const UnitMonomial& m, const mpz_class& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

bool RingElement::as_unit(Unit& out) const {
    if (terms_.size() != 1) return false;
    const auto& [m, c] = *terms_.begin();
    if (c != 1 && c != -1) return false;
    out = Unit(c < 0 ? -1 : 1, m);
    return true;
}

RingElement RingElement::operator+(const RingElement& o) const {
    RingElement r = *this;
    r += o;
    return r;
}

RingElement RingElement::operator-(const RingElement& o) const {
    RingElement r = *this;
    r -= o;
    return r;
}

RingElement RingElement::operator-() const {
    RingElement r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

RingElement RingElement::operator*(const RingElement& o) const {
    RingElement r;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
    return r;
}

RingElement& RingElement::operator+=(const RingElement& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

RingElement& RingElement::operator*=(const RingElement& o) { return *this = *this * o; }

std::string RingElement::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        mpz_class mag = abs(c);
        bool neg = c < 0;
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        if (m.is_one()) {
            out += mag.get_str();
        } else if (mag == 1) {
            out += m.to_string();
        } else {
            out += mag.get_str() + "*" + m.to_string();
        }
    }
    return out;
}

namespace {

class RingParser {
public:
    explicit RingParser(const std::string& s) : s_(s) {}

    RingElement parse() {
        RingElement result;
        skip();
        if (pos_ == s_.size()) throw ParseError("empty ring element");
        bool first = true;
        while (true) {
            skip();
            if (pos_ == s_.size()) break;
            int sign = 1;
            bool had_sign = false;
            while (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
                if (s_[pos_] == '-') sign = -sign;
                had_sign = true;
                ++pos_;
                skip();
            }
            if (!first && !had_sign) fail("expected '+' or '-'");
            first = false;
            result += parse_term() * RingElement(static_cast<long>(sign));
        }
        return result;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError("ring element '" + s_ + "' at offset " + std::to_string(pos_) + ": " + msg);
    }

    long parse_int() {
        skip();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer");
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) v = v * 10 + (s_[pos_++] - '0');
        return neg ? -v : v;
    }

    RingElement parse_factor() {
        skip();
        if (pos_ >= s_.size()) fail("expected factor");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return RingElement(UnitMonomial(), mpz_class(s_.substr(start, pos_ - start)));
        }
        if (c == 'X' || c == 'Y' || c == 'Z') {
            ++pos_;
            long e = 1;
            skip();
            if (pos_ < s_.size() && s_[pos_] == '^') {
                ++pos_;
                e = parse_int();
            }
            if (c == 'X') return RingElement(UnitMonomial(static_cast<int>(e & 1), 0, 0));
            if (c == 'Y') return RingElement(UnitMonomial(0, static_cast<int>(e & 1), 0));
            return RingElement(UnitMonomial(0, 0, e));
        }
        if (c == '(') {
            ++pos_;
            size_t depth = 1, start = pos_;
            while (pos_ < s_.size() && depth > 0) {
                if (s_[pos_] == '(') ++depth;
                if (s_[pos_] == ')') --depth;
                ++pos_;
            }
            if (depth != 0) fail("unbalanced parenthesis");
            return RingParser(s_.substr(start, pos_ - start - 1)).parse();
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    RingElement parse_term() {
        RingElement t = parse_factor();
        while (true) {
            skip();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                t *= parse_factor();
                continue;
            }
            // Juxtaposition such as "XYZ^2" or "2X".
            if (pos_ < s_.size() && (s_[pos_] == 'X' || s_[pos_] == 'Y' || s_[pos_] == 'Z' || s_[pos_] == '(')) {
                t *= parse_factor();
                continue;
            }
            break;
        }
        return t;
    }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace

RingElement RingElement::parse(const std::string& text) {
    std::string copy = text;
    return RingParser(copy).parse();
}

}  // namespace lgr
