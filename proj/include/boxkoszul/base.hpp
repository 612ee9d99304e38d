/* Common error types and the (p,q,r) arity triple used throughout. */
#pragma once

#include <stdexcept>
#include <string>
#include <tuple>

namespace boxk {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ArityMismatch : Error {
    explicit ArityMismatch(const std::string& msg) : Error("arity mismatch: " + msg) {}
};

struct SlotOutOfRange : Error {
    explicit SlotOutOfRange(const std::string& msg) : Error("slot out of range: " + msg) {}
};

struct OutOfRange : Error {
    explicit OutOfRange(const std::string& msg) : Error("out of range: " + msg) {}
};

struct InvalidKey : Error {
    explicit InvalidKey(const std::string& msg) : Error("invalid key: " + msg) {}
};

struct InvalidQ : Error {
    explicit InvalidQ(const std::string& msg) : Error("invalid q: " + msg) {}
};

struct CapExceeded : Error {
    explicit CapExceeded(const std::string& msg) : Error("cap exceeded: " + msg) {}
};

struct NonComposable : Error {
    explicit NonComposable(const std::string& msg) : Error("non-composable chain: " + msg) {}
};

struct RouteMismatch : Error {
    explicit RouteMismatch(const std::string& msg) : Error("route mismatch: " + msg) {}
};

// d∘d != 0 on a chain slice; carries the offending degree and a witness basis key.
struct NonComplex : Error {
    int degree;
    std::string witness;
    NonComplex(int deg, const std::string& w)
        : Error("d∘d != 0 at degree " + std::to_string(deg) + ", witness " + w),
          degree(deg), witness(w) {}
};

// Horizontal inputs p, vertical inputs q, horizontal outputs r of a box.
struct Arity {
    int p = 0, q = 0, r = 0;
    friend bool operator==(const Arity&, const Arity&) = default;
    auto operator<=>(const Arity&) const = default;
};

inline std::string to_string(const Arity& a) {
    return "(" + std::to_string(a.p) + "," + std::to_string(a.q) + "," + std::to_string(a.r) + ")";
}

} // namespace boxk
