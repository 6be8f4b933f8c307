#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace alg {

// Error with a stable machine-readable code alongside the human message.
struct AlgError : std::runtime_error {
    std::string code;
    AlgError(std::string c, const std::string& msg)
        : std::runtime_error(msg), code(std::move(c)) {}
};

[[noreturn]] void fail(const std::string& code, const std::string& msg);

struct FieldDesc {
    enum class Kind { Q, C12, Fp };
    Kind kind = Kind::Q;
    std::uint64_t p = 0;  // modulus when kind == Fp

    bool operator==(const FieldDesc&) const = default;

    static FieldDesc rationals() { return {Kind::Q, 0}; }
    static FieldDesc cyclotomic12() { return {Kind::C12, 0}; }
    static FieldDesc prime(std::uint64_t p);  // rejects p in {2,3} and composites

    // Spec strings: "q", "q-zeta12", "fp:<p>".
    std::string spec() const;
    static FieldDesc parse(const std::string& s);

    std::uint64_t characteristic() const { return kind == Kind::Fp ? p : 0; }
};

// Field element. Representations:
//   Q   : canonical mpq_class
//   C12 : coordinates in basis 1, z, z^2, z^3 where z^4 = z^2 - 1
//         (z a primitive 12th root of unity)
//   Fp  : least nonnegative residue plus the modulus
class FE {
public:
    using C12 = std::array<mpq_class, 4>;
    struct FpVal {
        std::uint64_t v = 0;
        std::uint64_t p = 0;
        bool operator==(const FpVal&) const = default;
    };

    FE() : st_(mpq_class(0)) {}

    static FE zero(const FieldDesc& fd);
    static FE one(const FieldDesc& fd);
    static FE from_int(const FieldDesc& fd, long n);
    static FE from_mpq(const FieldDesc& fd, const mpq_class& q);
    static FE c12(const C12& coords);
    static FE fp(std::uint64_t p, std::uint64_t v) { return FE(FpVal{v % p, p}); }

    FieldDesc field() const;
    bool is_zero() const;
    bool is_one() const;
    bool operator==(const FE& o) const;
    bool operator!=(const FE& o) const { return !(*this == o); }

    // Total order used only for deterministic tie-breaking and serialization.
    static int cmp(const FE& a, const FE& b);

    friend FE operator+(const FE& a, const FE& b);
    friend FE operator-(const FE& a, const FE& b);
    friend FE operator*(const FE& a, const FE& b);
    friend FE operator/(const FE& a, const FE& b);
    FE operator-() const;
    FE inv() const;  // DivisionByZero on zero

    // Square root inside the same field; nullopt when none exists there.
    std::optional<FE> sqrt() const;

    const mpq_class& rat() const { return std::get<mpq_class>(st_); }
    const C12& c12v() const { return std::get<C12>(st_); }
    const FpVal& fpv() const { return std::get<FpVal>(st_); }

    std::string str() const;

private:
    explicit FE(mpq_class q) : st_(std::move(q)) {}
    explicit FE(C12 c) : st_(std::move(c)) {}
    explicit FE(FpVal f) : st_(f) {}

    static void check_same(const FE& a, const FE& b);

    std::variant<mpq_class, C12, FpVal> st_;
};

struct RootsOfUnity {
    std::optional<FE> theta;  // primitive cube root: theta^2 + theta + 1 = 0
    std::optional<FE> i;      // square root of -1
};

// Deterministic: over Fp picks the smallest admissible residues.
RootsOfUnity roots_of_unity(const FieldDesc& fd);

// Modular helpers (exposed for tests).
std::uint64_t fp_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t fp_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p);
bool is_prime_u64(std::uint64_t n);
// Smallest square root of a mod p if one exists.
std::optional<std::uint64_t> fp_sqrt(std::uint64_t a, std::uint64_t p);

}  // namespace alg
