#include "helidec/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace helidec {

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(Errc code, int line, const std::string& message) {
    throw Error(code, "line " + std::to_string(line) + ": " + message);
}

const std::vector<std::string_view>& known_keys() {
    static const std::vector<std::string_view> keys = {
        "grid_n",        "nu",           "dt",           "t_end",         "sample_every",   "seed",
        "init_mode",     "init_band_lo", "init_band_hi", "init_exponent", "init_checkpoint", "triad",
        "force_band_lo", "force_band_hi", "force_amp",   "out_dir",
    };
    return keys;
}

double parse_real(const Entry& e, std::string_view key) {
    double v = 0.0;
    const char* end = e.value.data() + e.value.size();
    const auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        fail(Errc::InvalidValue, e.line, std::string(key) + " must be a finite number, got '" + e.value + "'");
    }
    return v;
}

template <class Int>
Int parse_int(const Entry& e, std::string_view key) {
    Int v{};
    const char* end = e.value.data() + e.value.size();
    const auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        fail(Errc::InvalidValue, e.line, std::string(key) + " must be an integer, got '" + e.value + "'");
    }
    return v;
}

}  // namespace

SimConfig parse_config(std::string_view text) {
    std::map<std::string, Entry, std::less<>> entries;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(Errc::InvalidValue, line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end()) {
            fail(Errc::UnknownKey, line_no, "unknown key '" + key + "'");
        }
        if (const auto it = entries.find(key); it != entries.end()) {
            fail(Errc::InvalidValue, line_no,
                 "duplicate key '" + key + "' (lines " + std::to_string(it->second.line) + " and " +
                     std::to_string(line_no) + ")");
        }
        if (value.empty()) fail(Errc::InvalidValue, line_no, "empty value for '" + key + "'");
        entries.emplace(key, Entry{value, line_no});
    }

    auto get = [&](std::string_view key) -> const Entry* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };

    SimConfig c;
    const Entry* grid_n = get("grid_n");
    if (!grid_n) throw Error(Errc::MissingKey, "line " + std::to_string(line_no) + ": missing required key 'grid_n'");
    const int n = parse_int<int>(*grid_n, "grid_n");
    if (n < 1 || n > kMaxGridN) {
        fail(Errc::InvalidValue, grid_n->line, "grid_n must lie in [1, " + std::to_string(kMaxGridN) + "]");
    }
    c.grid = Grid::with_default_dealias(n);

    if (const Entry* e = get("nu")) {
        c.nu = parse_real(*e, "nu");
        if (c.nu < 0.0) fail(Errc::InvalidValue, e->line, "nu must be >= 0");
    }
    if (const Entry* e = get("dt")) {
        c.dt = parse_real(*e, "dt");
        if (c.dt <= 0.0) fail(Errc::InvalidValue, e->line, "dt must be > 0");
    }
    if (const Entry* e = get("t_end")) {
        c.t_end = parse_real(*e, "t_end");
        if (c.t_end < 0.0) fail(Errc::InvalidValue, e->line, "t_end must be >= 0");
    }
    if (const Entry* e = get("sample_every")) {
        c.sample_every = parse_int<int>(*e, "sample_every");
        if (c.sample_every < 1) fail(Errc::InvalidValue, e->line, "sample_every must be >= 1");
    }
    if (const Entry* e = get("seed")) c.seed = parse_int<std::uint64_t>(*e, "seed");

    if (const Entry* e = get("init_mode")) {
        if (e->value == "random") {
            c.init_mode = InitMode::random;
        } else if (e->value == "checkpoint") {
            c.init_mode = InitMode::checkpoint;
        } else if (e->value == "triad") {
            c.init_mode = InitMode::triad;
        } else {
            fail(Errc::InvalidValue, e->line, "init_mode must be random, checkpoint or triad");
        }
    }
    const Entry* band_lo = get("init_band_lo");
    const Entry* band_hi = get("init_band_hi");
    if (band_lo) c.init_band.lo = parse_real(*band_lo, "init_band_lo");
    if (band_hi) c.init_band.hi = parse_real(*band_hi, "init_band_hi");
    if (c.init_band.lo < 1.0) fail(Errc::InvalidValue, band_lo ? band_lo->line : 0, "init_band_lo must be >= 1");
    if (c.init_band.hi < c.init_band.lo) {
        fail(Errc::InvalidValue, band_hi ? band_hi->line : band_lo->line, "init_band_hi must be >= init_band_lo");
    }
    if (const Entry* e = get("init_exponent")) c.init_exponent = parse_real(*e, "init_exponent");

    if (const Entry* e = get("init_checkpoint")) c.init_checkpoint = e->value;
    if (c.init_mode == InitMode::checkpoint && c.init_checkpoint.empty()) {
        throw Error(Errc::MissingKey, "line " + std::to_string(get("init_mode")->line) +
                                          ": init_mode = checkpoint requires 'init_checkpoint'");
    }

    if (const Entry* e = get("triad")) {
        std::istringstream in(e->value);
        std::vector<int> v;
        std::string tok;
        while (in >> tok) {
            for (char& ch : tok) {
                if (ch == ',') ch = ' ';
            }
            std::istringstream parts(tok);
            std::string piece;
            while (parts >> piece) v.push_back(parse_int<int>(Entry{piece, e->line}, "triad"));
        }
        if (v.size() != 9) fail(Errc::InvalidValue, e->line, "triad needs 9 integers (k, p, q)");
        TriadSpec t{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, {v[6], v[7], v[8]}};
        try {
            t.validate(c.grid);
        } catch (const Error& err) {
            fail(Errc::InvalidValue, e->line, err.what());
        }
        c.triad = t;
    }
    if (c.init_mode == InitMode::triad && !c.triad) {
        throw Error(Errc::MissingKey,
                    "line " + std::to_string(get("init_mode")->line) + ": init_mode = triad requires 'triad'");
    }

    const Entry* f_lo = get("force_band_lo");
    const Entry* f_hi = get("force_band_hi");
    if (static_cast<bool>(f_lo) != static_cast<bool>(f_hi)) {
        const Entry* present = f_lo ? f_lo : f_hi;
        throw Error(Errc::MissingKey, "line " + std::to_string(present->line) +
                                          ": force_band_lo and force_band_hi must be given together");
    }
    if (f_lo) {
        Band b{parse_real(*f_lo, "force_band_lo"), parse_real(*f_hi, "force_band_hi")};
        if (b.lo < 1.0) fail(Errc::InvalidValue, f_lo->line, "force_band_lo must be >= 1");
        if (b.hi < b.lo) fail(Errc::InvalidValue, f_hi->line, "force_band_hi must be >= force_band_lo");
        if (b.lo > std::sqrt(3.0) * c.grid.dealias_limit) {
            fail(Errc::InvalidValue, f_lo->line, "forcing band lies beyond the retained modes");
        }
        c.force_band = b;
    }
    if (const Entry* e = get("force_amp")) {
        c.force_amp = parse_real(*e, "force_amp");
        if (c.force_amp < 0.0) fail(Errc::InvalidValue, e->line, "force_amp must be >= 0");
    }
    if (const Entry* e = get("out_dir")) c.out_dir = e->value;
    return c;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::Io, "cannot open config " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string format_config(const SimConfig& c) {
    std::ostringstream out;
    out.precision(17);
    out << "grid_n = " << c.grid.n << '\n'
        << "nu = " << c.nu << '\n'
        << "dt = " << c.dt << '\n'
        << "t_end = " << c.t_end << '\n'
        << "sample_every = " << c.sample_every << '\n'
        << "seed = " << c.seed << '\n';
    switch (c.init_mode) {
    case InitMode::random: out << "init_mode = random\n"; break;
    case InitMode::checkpoint: out << "init_mode = checkpoint\n"; break;
    case InitMode::triad: out << "init_mode = triad\n"; break;
    }
    out << "init_band_lo = " << c.init_band.lo << '\n'
        << "init_band_hi = " << c.init_band.hi << '\n'
        << "init_exponent = " << c.init_exponent << '\n';
    if (!c.init_checkpoint.empty()) out << "init_checkpoint = " << c.init_checkpoint << '\n';
    if (c.triad) {
        const auto& t = *c.triad;
        out << "triad = " << t.k.kx << ' ' << t.k.ky << ' ' << t.k.kz << ' ' << t.p.kx << ' ' << t.p.ky << ' '
            << t.p.kz << ' ' << t.q.kx << ' ' << t.q.ky << ' ' << t.q.kz << '\n';
    }
    if (c.force_band) {
        out << "force_band_lo = " << c.force_band->lo << '\n' << "force_band_hi = " << c.force_band->hi << '\n';
    }
    out << "force_amp = " << c.force_amp << '\n' << "out_dir = " << c.out_dir << '\n';
    return out.str();
}

}  // namespace helidec
