#include "p1/serialize.hpp"

#include <charconv>
#include <cmath>

namespace p1 {

std::string fmt15(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 15);
    return std::string(buf, r.ptr);
}

nlohmann::json num15(double x) {
    if (!std::isfinite(x)) return nullptr;
    const std::string s = fmt15(x);
    double v = 0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << csv_field(fields[i]);
    }
    os << "\r\n";
}

nlohmann::json to_json(const ConstantBundle& b) {
    return {{"C", num15(b.C)},
            {"v_min_max", num15(b.v_min_max)},
            {"x_max", num15(b.x_max)},
            {"C0", num15(b.C0)},
            {"x_max0", num15(b.x_max0)},
            {"multiple_peaks", b.multiple_peaks}};
}

nlohmann::json to_json(const Event& e) {
    return {{"kind", to_string(e.kind)}, {"x", num15(e.x)}, {"payload", num15(e.payload)}};
}

nlohmann::json to_json(const Trajectory& t) {
    nlohmann::json origin;
    if (t.origin.from_pole)
        origin = {{"pole", num15(t.origin.x)}, {"v", num15(t.origin.v)}};
    else
        origin = {{"x", num15(t.origin.x)}, {"y", num15(t.origin.y)}, {"dy", num15(t.origin.dy)}};
    origin["direction"] = t.origin.direction == Direction::Left ? "left" : "right";
    nlohmann::json evs = nlohmann::json::array();
    for (const Event& e : t.events) evs.push_back(to_json(e));
    return {{"origin", origin},
            {"interval",
             {{"a", num15(t.a.x)}, {"a_kind", to_string(t.a.kind)}, {"b", num15(t.b.x)}, {"b_kind", to_string(t.b.kind)}}},
            {"events", evs},
            {"v_left", num15(t.a.v)},
            {"v_right", num15(t.b.v)}};
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t, int n, double margin) {
    write_csv_row(os, {"x", "y", "dy"});
    const double lo = t.a.x + (t.a.kind == EndKind::Pole ? margin : 0.0);
    const double hi = t.b.x - (t.b.kind == EndKind::Pole ? margin : 0.0);
    for (int i = 0; i < n; ++i) {
        const double x = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
        const PhaseState s = t.at(x);
        write_csv_row(os, {fmt15(x), fmt15(s.y), fmt15(s.dy)});
    }
}

}  // namespace p1
