#include "heckebench/qseries.hpp"

#include <algorithm>
#include <cstring>

#include "heckebench/errors.hpp"

namespace heckebench::qseries {

namespace {

constexpr std::size_t kLimbBits = GMP_NUMB_BITS;

// Packs the coefficients of one sign into consecutive fields of `limbs` limbs.
// Returns false when no coefficient had that sign.
bool pack(const Series& a, std::size_t len, std::size_t limbs, int sign, mpz_class& out) {
  const std::size_t n = std::min(a.size(), len);
  std::size_t top = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (sgn(a[i]) == sign) top = i + 1;
  if (top == 0) {
    out = 0;
    return false;
  }
  const std::size_t total = top * limbs;
  mp_limb_t* dst = mpz_limbs_write(out.get_mpz_t(), static_cast<mp_size_t>(total));
  std::memset(dst, 0, total * sizeof(mp_limb_t));
  for (std::size_t i = 0; i < top; ++i) {
    if (sgn(a[i]) != sign) continue;
    const mpz_srcptr z = a[i].get_mpz_t();
    const std::size_t sz = mpz_size(z);
    const mp_limb_t* src = mpz_limbs_read(z);
    std::memcpy(dst + i * limbs, src, sz * sizeof(mp_limb_t));
  }
  mpz_limbs_finish(out.get_mpz_t(), static_cast<mp_size_t>(total));
  return true;
}

// Adds (sign = +1) or subtracts the fields of a packed nonnegative product.
void unpack_into(const mpz_class& p, std::size_t limbs, int sign, Series& out) {
  const mpz_srcptr z = p.get_mpz_t();
  const std::size_t sz = mpz_size(z);
  const mp_limb_t* src = mpz_limbs_read(z);
  mpz_class field;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t lo = i * limbs;
    if (lo >= sz) break;
    const std::size_t count = std::min(limbs, sz - lo);
    mp_limb_t* dst = mpz_limbs_write(field.get_mpz_t(), static_cast<mp_size_t>(count));
    std::memcpy(dst, src + lo, count * sizeof(mp_limb_t));
    mpz_limbs_finish(field.get_mpz_t(), static_cast<mp_size_t>(count));
    if (sign > 0) out[i] += field;
    else out[i] -= field;
  }
}

std::size_t bit_length(std::size_t v) {
  std::size_t b = 0;
  while (v) {
    ++b;
    v >>= 1;
  }
  return b;
}

}  // namespace

std::size_t max_bits(const Series& a) {
  std::size_t b = 0;
  for (const auto& c : a)
    if (sgn(c) != 0) b = std::max(b, mpz_sizeinbase(c.get_mpz_t(), 2));
  return b;
}

Series multiply(const Series& a, const Series& b, std::size_t len) {
  Series out(len);
  if (a.empty() || b.empty() || len == 0) return out;
  const std::size_t terms = std::min({a.size(), b.size(), len});
  const std::size_t bits = max_bits(a) + max_bits(b) + bit_length(terms) + 1;
  const std::size_t limbs = (bits + kLimbBits - 1) / kLimbBits;

  mpz_class ap, an, bp, bn, prod;
  const bool has_ap = pack(a, len, limbs, 1, ap);
  const bool has_an = pack(a, len, limbs, -1, an);
  const bool has_bp = pack(b, len, limbs, 1, bp);
  const bool has_bn = pack(b, len, limbs, -1, bn);
  if (has_ap && has_bp) {
    prod = ap * bp;
    unpack_into(prod, limbs, 1, out);
  }
  if (has_an && has_bn) {
    prod = an * bn;
    unpack_into(prod, limbs, 1, out);
  }
  if (has_ap && has_bn) {
    prod = ap * bn;
    unpack_into(prod, limbs, -1, out);
  }
  if (has_an && has_bp) {
    prod = an * bp;
    unpack_into(prod, limbs, -1, out);
  }
  return out;
}

Series multiply_naive(const Series& a, const Series& b, std::size_t len) {
  Series out(len);
  for (std::size_t i = 0; i < std::min(a.size(), len); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Series power(const Series& a, int e, std::size_t len) {
  if (e < 0) throw ParameterError("series power must be nonnegative");
  Series result(len);
  if (len > 0) result[0] = 1;
  Series base(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(std::min(a.size(), len)));
  base.resize(len);
  while (e > 0) {
    if (e & 1) result = multiply(result, base, len);
    e >>= 1;
    if (e > 0) base = multiply(base, base, len);
  }
  return result;
}

Series divisor_sums(int j, std::size_t len) {
  Series s(len);
  mpz_class dj;
  for (std::size_t d = 1; d < len; ++d) {
    mpz_ui_pow_ui(dj.get_mpz_t(), d, static_cast<unsigned long>(j));
    for (std::size_t m = d; m < len; m += d) s[m] += dj;
  }
  return s;
}

Series eisenstein4(std::size_t len) {
  Series e = divisor_sums(3, len);
  for (auto& c : e) c *= 240;
  if (len > 0) e[0] = 1;
  return e;
}

Series eisenstein6(std::size_t len) {
  Series e = divisor_sums(5, len);
  for (auto& c : e) c *= -504;
  if (len > 0) e[0] = 1;
  return e;
}

Series delta(std::size_t len) {
  const Series e4 = eisenstein4(len);
  const Series e6 = eisenstein6(len);
  Series d = multiply(multiply(e4, e4, len), e4, len);
  const Series e6sq = multiply(e6, e6, len);
  for (std::size_t i = 0; i < len; ++i) {
    d[i] -= e6sq[i];
    mpz_divexact_ui(d[i].get_mpz_t(), d[i].get_mpz_t(), 1728);
  }
  return d;
}

}  // namespace heckebench::qseries
