#include "qtop/report.hpp"
#include "qtop/error.hpp"

#include <sstream>

namespace qtop {

std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skipped: return "skipped";
    }
    return "?";
}

Verdict parse_verdict(std::string_view text)
{
    if (text == "pass")
        return Verdict::pass;
    if (text == "fail")
        return Verdict::fail;
    if (text == "skipped")
        return Verdict::skipped;
    throw ValidationError("unknown verdict '" + std::string(text) + "'");
}

void Report::fail(Json witness)
{
    if (_verdict != Verdict::fail) {
        _verdict = Verdict::fail;
        _witness = std::move(witness);
    }
}

void Report::skip(std::string reason)
{
    if (_verdict != Verdict::fail)
        _verdict = Verdict::skipped;
    _notes.push_back(std::move(reason));
}

void Report::bump(std::string_view key, std::int64_t by)
{
    for (auto& [k, v] : _stats)
        if (k == key) {
            v += by;
            return;
        }
    _stats.emplace_back(std::string(key), by);
}

void Report::set_stat(std::string_view key, std::int64_t value)
{
    for (auto& [k, v] : _stats)
        if (k == key) {
            v = value;
            return;
        }
    _stats.emplace_back(std::string(key), value);
}

std::int64_t Report::stat(std::string_view key) const
{
    for (const auto& [k, v] : _stats)
        if (k == key)
            return v;
    return 0;
}

void Report::absorb(const Report& sub, std::string_view prefix)
{
    for (const auto& [k, v] : sub.stats())
        bump(std::string(prefix) + "." + k, v);
    if (sub.failed()) {
        Json w;
        w["sub_check"] = sub.check_name();
        w["witness"] = *sub.witness();
        fail(std::move(w));
    } else if (sub.verdict() == Verdict::skipped) {
        for (const auto& n : sub.notes())
            skip(sub.check_name() + ": " + n);
    }
}

Json to_json(const Report& r)
{
    Json j;
    j["check_name"] = r.check_name();
    j["verdict"] = std::string(to_string(r.verdict()));
    j["witness"] = r.witness() ? *r.witness() : Json(nullptr);
    Json stats = Json::object();
    for (const auto& [k, v] : r.stats())
        stats[k] = v;
    j["stats"] = std::move(stats);
    if (!r.result().is_null())
        j["result"] = r.result();
    if (!r.notes().empty())
        j["notes"] = r.notes();
    return j;
}

Report report_from_json(const Json& j)
{
    Report r(j.at("check_name").get<std::string>());
    for (const auto& [k, v] : j.at("stats").items())
        r.set_stat(k, v.get<std::int64_t>());
    if (j.contains("result"))
        r.set_result(j.at("result"));
    if (j.contains("notes"))
        for (const auto& n : j.at("notes"))
            r.note(n.get<std::string>());
    switch (parse_verdict(j.at("verdict").get<std::string>())) {
    case Verdict::pass: break;
    case Verdict::fail:
        if (j.at("witness").is_null())
            throw ValidationError("failing report without a witness");
        r.fail(j.at("witness"));
        break;
    case Verdict::skipped:
        r._verdict = Verdict::skipped;
        break;
    }
    return r;
}

std::string render_text(const Report& r)
{
    std::ostringstream out;
    out << r.check_name() << ": " << to_string(r.verdict()) << "\n";
    for (const auto& [k, v] : r.stats())
        out << "  " << k << " = " << v << "\n";
    if (!r.result().is_null())
        out << "  result: " << r.result().dump() << "\n";
    if (r.witness())
        out << "  witness: " << r.witness()->dump() << "\n";
    for (const auto& n : r.notes())
        if (!n.empty())
            out << "  note: " << n << "\n";
    return out.str();
}

int exit_code(Verdict v)
{
    switch (v) {
    case Verdict::pass: return 0;
    case Verdict::fail: return 1;
    case Verdict::skipped: return 2;
    }
    return 2;
}

} // namespace qtop
