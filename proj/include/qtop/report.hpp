#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qtop {

using Json = nlohmann::ordered_json;

enum class Verdict
{
    pass,
    fail,
    skipped,
};

std::string_view to_string(Verdict v);
Verdict parse_verdict(std::string_view text);

/// Outcome of one check. A failing report always carries a witness; stats keep their
/// first-insertion order so serialized reports are stable across runs.
class Report
{
public:
    explicit Report(std::string check_name)
        : _check_name{std::move(check_name)} {}

    [[nodiscard]] const std::string& check_name() const { return _check_name; }
    [[nodiscard]] Verdict verdict() const { return _verdict; }
    [[nodiscard]] bool passed() const { return _verdict == Verdict::pass; }
    [[nodiscard]] bool failed() const { return _verdict == Verdict::fail; }
    [[nodiscard]] const std::optional<Json>& witness() const { return _witness; }
    [[nodiscard]] const std::vector<std::pair<std::string, std::int64_t>>& stats() const { return _stats; }
    [[nodiscard]] const Json& result() const { return _result; }
    [[nodiscard]] const std::vector<std::string>& notes() const { return _notes; }

    /// Marks the report failed. Only the first witness is kept.
    void fail(Json witness);
    /// Marks the report skipped unless it already failed.
    void skip(std::string reason);

    void bump(std::string_view key, std::int64_t by = 1);
    void set_stat(std::string_view key, std::int64_t value);
    [[nodiscard]] std::int64_t stat(std::string_view key) const;

    void set_result(Json result) { _result = std::move(result); }
    void note(std::string text) { _notes.push_back(std::move(text)); }

    /// Folds a sub-check into this one: stats are added under `prefix.`, a failure is
    /// propagated with the sub-report's witness nested.
    void absorb(const Report& sub, std::string_view prefix);

    friend bool operator==(const Report&, const Report&) = default;
    friend Report report_from_json(const Json& j);

private:
    std::string _check_name;
    Verdict _verdict = Verdict::pass;
    std::optional<Json> _witness;
    std::vector<std::pair<std::string, std::int64_t>> _stats;
    Json _result;
    std::vector<std::string> _notes;
};

/// Machine form: {check_name, verdict, witness, stats[, result][, notes]} in that key order.
Json to_json(const Report& r);
Report report_from_json(const Json& j);

/// Human-readable multi-line form.
std::string render_text(const Report& r);

/// 0 pass, 1 fail, 2 skipped (undecided).
int exit_code(Verdict v);

} // namespace qtop
