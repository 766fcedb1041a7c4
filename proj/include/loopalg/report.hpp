#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

namespace loopalg {

/// Outcome of an exhaustive verification sweep. Keeps the first counterexample only.
struct VerificationReport {
    std::string suite;
    std::size_t checks = 0;
    std::optional<std::string> counterexample;

    explicit VerificationReport(std::string name = {}) : suite(std::move(name)) {}

    bool passed() const { return !counterexample.has_value(); }

    /// Records one check; `describe` is only invoked on the first failure.
    template <class Describe>
    bool check(bool ok, Describe&& describe)
    {
        ++checks;
        if (!ok && !counterexample)
            counterexample = std::forward<Describe>(describe)();
        return ok;
    }

    void merge(const VerificationReport& other)
    {
        checks += other.checks;
        if (!counterexample && other.counterexample)
            counterexample = other.counterexample;
    }

    std::string summary() const
    {
        if (passed())
            return "PASS (" + std::to_string(checks) + " checks)";
        return "FAIL (" + std::to_string(checks) + " checks): " + *counterexample;
    }
};

} // namespace loopalg
