#include "arzela/rational.hpp"

#include <cctype>
#include <ostream>

#include "arzela/errors.hpp"

namespace arzela {

Rat::Rat(long num, long den) {
    if (den == 0) throw InvalidInput("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat::Rat(mpq_class v) : v_(std::move(v)) {
    if (v_.get_den() == 0) throw InvalidInput("rational with zero denominator");
    v_.canonicalize();
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rat Rat::parse(std::string_view text) {
    std::string_view rest = text;
    bool negative = false;
    if (!rest.empty() && rest.front() == '-') {
        negative = true;
        rest.remove_prefix(1);
    }
    std::string_view num_part = rest;
    std::string_view den_part;
    bool has_den = false;
    if (auto slash = rest.find('/'); slash != std::string_view::npos) {
        num_part = rest.substr(0, slash);
        den_part = rest.substr(slash + 1);
        has_den = true;
    }
    if (!all_digits(num_part) || (has_den && !all_digits(den_part)))
        throw InvalidInput("bad rational '" + std::string(text) +
                           "': expected \"p/q\" or \"n\" with decimal digits");

    mpz_class num(std::string(num_part), 10);
    mpz_class den = has_den ? mpz_class(std::string(den_part), 10) : mpz_class(1);
    if (den == 0)
        throw InvalidInput("bad rational '" + std::string(text) + "': zero denominator");
    if (negative) num = -num;
    mpq_class q(num, den);
    q.canonicalize();
    return Rat(std::move(q));
}

std::string Rat::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.v_ == 0) throw InvalidInput("rational division by zero");
    v_ /= o.v_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

}  // namespace arzela
