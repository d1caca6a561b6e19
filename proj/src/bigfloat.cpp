#include "triplewell/bigfloat.hpp"

#include <cstdlib>

namespace triplewell {

BigFloat BigFloat::from_string(const std::string& text, mpfr_prec_t prec) {
    BigFloat r(prec);
    if (text.empty()) {
        throw InvalidParameterError("empty string is not a number");
    }
    char* end = nullptr;
    mpfr_strtofr(r.raw(), text.c_str(), &end, 10, MPFR_RNDN);
    if (end == text.c_str() || *end != '\0') {
        throw InvalidParameterError("not a decimal number: '" + text + "'");
    }
    return r;
}

std::string BigFloat::to_fixed(int decimals) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rf", decimals, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

std::string BigFloat::to_sci(int sig_after_point) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", sig_after_point, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

}  // namespace triplewell
