#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace cac {

/// Outcome of a batch of numerical identity checks. Each failed relation is
/// recorded as a human-readable line; an empty list means every check held.
struct CheckReport {
    std::string name;
    std::vector<std::string> failures;
    std::size_t checked = 0;

    [[nodiscard]] bool ok() const noexcept { return failures.empty(); }

    void expect(bool condition, const std::string& what) {
        ++checked;
        if (!condition) failures.push_back(what);
    }

    template <typename L, typename R>
    void expect_eq(const L& lhs, const R& rhs, const std::string& what) {
        ++checked;
        if (!(lhs == rhs)) {
            std::ostringstream os;
            os << what << ": " << lhs << " != " << rhs;
            failures.push_back(os.str());
        }
    }

    void merge(const CheckReport& other) {
        checked += other.checked;
        for (const auto& f : other.failures) failures.push_back(other.name + ": " + f);
    }

    [[nodiscard]] std::string summary() const {
        std::ostringstream os;
        os << name << ": " << (ok() ? "ok" : "FAILED") << " (" << checked << " checks";
        if (!ok()) os << ", " << failures.size() << " failed";
        os << ")";
        for (const auto& f : failures) os << "\n  " << f;
        return os.str();
    }
};

}  // namespace cac
