#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace mixsum {

using BigInt = mpz_class;
using u128 = unsigned __int128;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

inline bool fits_u64(const BigInt& v) {
  return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const BigInt& v) {
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

inline std::optional<std::uint64_t> try_u64(const BigInt& v) {
  if (!fits_u64(v)) return std::nullopt;
  return to_u64(v);
}

inline BigInt from_u64(std::uint64_t v) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

inline BigInt from_u128(u128 v) {
  const std::uint64_t words[2] = {static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(v >> 64)};
  BigInt out;
  mpz_import(out.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  return out;
}

inline bool fits_u128(const BigInt& v) {
  return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 128;
}

inline u128 to_u128(const BigInt& v) {
  std::uint64_t words[2] = {0, 0};
  mpz_export(words, nullptr, -1, sizeof(std::uint64_t), 0, 0, v.get_mpz_t());
  return (static_cast<u128>(words[1]) << 64) | words[0];
}

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

std::string to_string_u128(u128 v);

inline BigInt pow_ui(const BigInt& base, unsigned long e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

inline BigInt pow_ui(unsigned long base, unsigned long e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, e);
  return out;
}

}  // namespace mixsum
