#pragma once

// Instrumented scalar for exact operation counting. Every multiplication and
// every addition performed on counted values is tallied, as is the number of
// stored `Counted` elements alive at once. Arithmetic yields a `Transient`
// (a register value) that is not part of the live count until it is stored.
// Tallies are thread-local, so counting runs must be single-threaded.

#include <algorithm>
#include <cstdint>

namespace ssd::bench {

struct OpTally {
    std::uint64_t multiplications = 0;
    std::uint64_t additions = 0;
    std::uint64_t copies = 0;
    std::int64_t live = 0;
    std::int64_t peak_live = 0;
};

inline thread_local OpTally tally;

struct Transient {
    double v;
};

class Counted {
public:
    Counted() noexcept { born(); }
    Counted(double v) noexcept : v_(v) { born(); }           // NOLINT(google-explicit-constructor)
    Counted(Transient t) noexcept : v_(t.v) { born(); }      // NOLINT(google-explicit-constructor)
    Counted(const Counted& other) noexcept : v_(other.v_)
    {
        born();
        ++tally.copies;
    }
    Counted& operator=(const Counted& other) noexcept
    {
        v_ = other.v_;
        ++tally.copies;
        return *this;
    }
    Counted& operator=(Transient t) noexcept
    {
        v_ = t.v;
        return *this;
    }
    ~Counted() { --tally.live; }

    double value() const noexcept { return v_; }
    operator Transient() const noexcept { return {v_}; }  // NOLINT(google-explicit-constructor)

    friend bool operator==(const Counted& a, const Counted& b) noexcept { return a.v_ == b.v_; }

private:
    static void born() noexcept
    {
        ++tally.live;
        tally.peak_live = std::max(tally.peak_live, tally.live);
    }

    double v_ = 0.0;
};

inline Transient operator*(Transient a, Transient b) noexcept
{
    ++tally.multiplications;
    return {a.v * b.v};
}
inline Transient operator+(Transient a, Transient b) noexcept
{
    ++tally.additions;
    return {a.v + b.v};
}
inline Transient operator*(const Counted& a, const Counted& b) noexcept { return Transient(a) * Transient(b); }
inline Transient operator+(const Counted& a, const Counted& b) noexcept { return Transient(a) + Transient(b); }
inline Transient operator*(const Counted& a, Transient b) noexcept { return Transient(a) * b; }
inline Transient operator*(Transient a, const Counted& b) noexcept { return a * Transient(b); }
inline Transient operator+(const Counted& a, Transient b) noexcept { return Transient(a) + b; }
inline Transient operator+(Transient a, const Counted& b) noexcept { return a + Transient(b); }

}  // namespace ssd::bench
