#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "gfw/theorems/theorems.hpp"

namespace gfw {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string mid(const std::optional<CertReal>& v) { return v ? num(v->mid_double()) : ""; }
std::string rad(const std::optional<CertReal>& v) { return v ? num(v->rad_double()) : ""; }

std::string count(const std::optional<Integer>& v, const std::optional<Integer>& vmax) {
    if (!v) return "";
    std::string s = gfw::to_string(*v);
    if (vmax) s += ".." + gfw::to_string(*vmax);
    return s;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string verdict_text(const VerificationReport& r) {
    std::string v = to_string(r.verdict);
    if (r.verdict_theorem && *r.verdict_theorem != r.verdict) v += "/" + to_string(*r.verdict_theorem);
    return v;
}

nlohmann::json interval(const std::optional<CertReal>& v) {
    if (!v) return nullptr;
    return {{"mid", v->mid_double()}, {"rad", v->rad_double()}};
}

nlohmann::json integer(const std::optional<Integer>& v) {
    if (!v) return nullptr;
    if (v->fits_slong_p()) return v->get_si();
    return gfw::to_string(*v);
}

}  // namespace

std::string csv_header() {
    return "statement,field,divisor,deg_mid,deg_rad,h0,h0_dual,ratio_mid,ratio_rad,C_theorem,C_remark,B,i_mid,i_rad,"
           "verdict,margin_mid";
}

std::string to_csv_row(const VerificationReport& r) {
    std::vector<std::string> cols = {r.statement,       r.field,          r.divisor,
                                     mid(r.deg),        rad(r.deg),       count(r.h0, r.h0_max),
                                     count(r.h0_dual, r.h0_dual_max),     mid(r.ratio),
                                     rad(r.ratio),      mid(r.c_theorem), mid(r.c_remark),
                                     mid(r.b),          mid(r.i_value),   rad(r.i_value),
                                     verdict_text(r),   mid(r.margin)};
    std::string out;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) out += ',';
        out += csv_field(cols[i]);
    }
    return out;
}

std::string to_jsonl(const VerificationReport& r) {
    nlohmann::json j = {{"statement", r.statement},
                        {"field", r.field},
                        {"divisor", r.divisor},
                        {"choices", r.choices},
                        {"deg", interval(r.deg)},
                        {"h0", integer(r.h0)},
                        {"h0_dual", integer(r.h0_dual)},
                        {"ratio", interval(r.ratio)},
                        {"C_theorem", interval(r.c_theorem)},
                        {"C_remark", interval(r.c_remark)},
                        {"B", interval(r.b)},
                        {"i", interval(r.i_value)},
                        {"verdict", to_string(r.verdict)},
                        {"margin", interval(r.margin)}};
    if (r.h0_max) j["h0_max"] = integer(r.h0_max);
    if (r.h0_dual_max) j["h0_dual_max"] = integer(r.h0_dual_max);
    if (r.verdict_theorem) j["verdict_theorem"] = to_string(*r.verdict_theorem);
    if (!r.note.empty()) j["note"] = r.note;
    return j.dump();
}

std::string table_header() {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-5s %-16s %-28s %-14s %-8s %-8s %-14s %-14s %-13s %s", "stmt", "field",
                  "divisor", "deg", "h0", "h0_dual", "ratio", "i", "verdict", "margin");
    return buf;
}

std::string to_table_row(const VerificationReport& r) {
    auto clip = [](std::string s, std::size_t w) {
        if (s.size() > w) s = s.substr(0, w - 1) + "~";
        return s;
    };
    char buf[512];
    std::snprintf(buf, sizeof buf, "%-5s %-16s %-28s %-14s %-8s %-8s %-14s %-14s %-13s %s", r.statement.c_str(),
                  clip(r.field, 16).c_str(), clip(r.divisor, 28).c_str(), mid(r.deg).c_str(),
                  count(r.h0, r.h0_max).c_str(), count(r.h0_dual, r.h0_dual_max).c_str(), mid(r.ratio).c_str(),
                  mid(r.i_value).c_str(), verdict_text(r).c_str(), mid(r.margin).c_str());
    std::string out = buf;
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

}  // namespace gfw
