#include "lcss/integer.hpp"

namespace lcss {

int valuation(const Integer& value, int prime)
{
    if (value == 0)
        return -1;
    Integer rest = abs(value);
    const Integer p = prime;
    int v = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t()) != 0) {
        mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

Integer power_of(int prime, int exponent)
{
    Integer result;
    mpz_ui_pow_ui(result.get_mpz_t(), static_cast<unsigned long>(prime),
                  static_cast<unsigned long>(exponent));
    return result;
}

Integer prime_to_part(const Integer& value, int prime)
{
    if (value == 0)
        return 0;
    Integer rest = abs(value);
    const Integer p = prime;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t()) != 0)
        mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
    return rest;
}

}  // namespace lcss
