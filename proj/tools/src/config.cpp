#include "nematic_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <type_traits>

namespace nematic::cli {

ConfigError::ConfigError(std::string key, int line, std::string const& what)
    : std::runtime_error{[&] {
          std::string msg = "config";
          if (line > 0)
              msg += " line " + std::to_string(line);
          if (!key.empty())
              msg += " key '" + key + "'";
          return msg + ": " + what;
      }()},
      key_{std::move(key)}, line_{line}
{}

namespace {

std::string trim(std::string const& s)
{
    auto const b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto const e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(std::string const& s)
{
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\' && quoted) {
            ++i;
            continue;
        }
        if (s[i] == '"')
            quoted = !quoted;
        else if (s[i] == '#' && !quoted)
            return s.substr(0, i);
    }
    return s;
}

bool parse_number(std::string const& text, double& out)
{
    if (text.empty())
        return false;
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return end == text.c_str() + text.size() && std::isfinite(out);
}

ConfigValue parse_value(std::string const& key, std::string const& text, int line)
{
    if (text.empty())
        throw ConfigError(key, line, "missing value");
    if (text == "true")
        return true;
    if (text == "false")
        return false;
    if (text.front() == '"') {
        std::string out;
        std::size_t i = 1;
        for (; i < text.size() && text[i] != '"'; ++i) {
            if (text[i] == '\\' && i + 1 < text.size())
                ++i;
            out += text[i];
        }
        if (i != text.size() - 1)
            throw ConfigError(key, line, "unterminated or trailing characters after string");
        return out;
    }
    if (text.front() == '[') {
        if (text.back() != ']')
            throw ConfigError(key, line, "array must close on the same line");
        std::vector<double> values;
        std::stringstream ss{text.substr(1, text.size() - 2)};
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty())
                continue;
            double v = 0;
            if (!parse_number(item, v))
                throw ConfigError(key, line, "array element '" + item + "' is not a number");
            values.push_back(v);
        }
        return values;
    }
    double v = 0;
    if (!parse_number(text, v))
        throw ConfigError(key, line, "cannot parse value '" + text + "'");
    return v;
}

}  // namespace

ConfigDocument parse_config(std::istream& is)
{
    ConfigDocument doc;
    std::string section;
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        auto const text = trim(strip_comment(raw));
        if (text.empty())
            continue;
        if (text.front() == '[') {
            if (text.back() != ']' || text.size() < 3)
                throw ConfigError("", line, "malformed section header '" + text + "'");
            section = trim(text.substr(1, text.size() - 2));
            continue;
        }
        auto const eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigError("", line, "expected 'key = value', got '" + text + "'");
        auto const name = trim(text.substr(0, eq));
        if (name.empty())
            throw ConfigError("", line, "empty key");
        auto const key = section.empty() ? name : section + "." + name;
        if (doc.contains(key))
            throw ConfigError(key, line, "duplicate key (first set on line " +
                                             std::to_string(doc.at(key).line) + ")");
        doc.emplace(key, ConfigEntry{parse_value(key, trim(text.substr(eq + 1)), line), line});
    }
    return doc;
}

ConfigDocument parse_config_file(std::filesystem::path const& path)
{
    std::ifstream is{path};
    if (!is)
        throw ConfigError("", 0, "cannot open '" + path.string() + "'");
    return parse_config(is);
}

char const* to_string(Command c) noexcept
{
    switch (c) {
    case Command::solve: return "solve";
    case Command::sweep_mu: return "sweep-mu";
    case Command::sweep_h: return "sweep-h";
    case Command::evolve: return "evolve";
    case Command::stability: return "stability";
    case Command::support: return "support";
    case Command::diagnose: return "diagnose";
    }
    return "unknown";
}

Command parse_command(std::string const& name)
{
    for (auto c : {Command::solve, Command::sweep_mu, Command::sweep_h, Command::evolve,
                   Command::stability, Command::support, Command::diagnose})
        if (name == to_string(c))
            return c;
    throw ConfigError("command", 0, "unknown command '" + name + "'");
}

Grid RunConfig::standing_grid() const { return Grid::half_line(grid.n_points, grid.dx); }

namespace {

// Shortest text that reads back to the same double.
std::string format_number(double v)
{
    char buf[32];
    auto const res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

std::string quote(std::string const& s)
{
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\')
            out += '\\';
        out += ch;
    }
    return out + '"';
}

struct Field
{
    std::string key;
    std::function<void(RunConfig&, ConfigEntry const&, std::string const&)> set;
    std::function<std::string(RunConfig const&)> get;
    bool integral = false;
};

template<class T>
T const& expect(ConfigEntry const& e, std::string const& key, char const* what)
{
    if (auto const* v = std::get_if<T>(&e.value))
        return *v;
    throw ConfigError(key, e.line, std::string("expected ") + what);
}

double as_integer(ConfigEntry const& e, std::string const& key, double lo)
{
    double const v = expect<double>(e, key, "an integer");
    if (v != std::floor(v) || v < lo || v > 1e15)
        throw ConfigError(key, e.line, "expected an integer >= " + format_number(lo));
    return v;
}

template<class Access>
Field field(std::string key, Access access)
{
    using T = std::remove_cvref_t<decltype(access(std::declval<RunConfig&>()))>;
    Field f;
    f.key = std::move(key);
    f.integral = std::is_same_v<T, int> || std::is_same_v<T, std::size_t>;
    f.set = [access](RunConfig& c, ConfigEntry const& e, std::string const& k) {
        if constexpr (std::is_same_v<T, double>)
            access(c) = expect<double>(e, k, "a number");
        else if constexpr (std::is_same_v<T, bool>)
            access(c) = expect<bool>(e, k, "true or false");
        else if constexpr (std::is_same_v<T, int>)
            access(c) = static_cast<int>(as_integer(e, k, 0));
        else if constexpr (std::is_same_v<T, std::size_t>)
            access(c) = static_cast<std::size_t>(as_integer(e, k, 0));
        else if constexpr (std::is_same_v<T, std::string>)
            access(c) = expect<std::string>(e, k, "a quoted string");
        else if constexpr (std::is_same_v<T, std::vector<double>>)
            access(c) = expect<std::vector<double>>(e, k, "an array of numbers");
        else if constexpr (std::is_same_v<T, Command>)
            try {
                access(c) = parse_command(expect<std::string>(e, k, "a quoted command name"));
            } catch (ConfigError const& err) {
                if (err.line() != 0)
                    throw;
                throw ConfigError(k, e.line, "unknown command");
            }
        else if constexpr (std::is_same_v<T, RelaxationMode>) {
            auto const& s = expect<std::string>(e, k, "\"aitken\" or \"fixed\"");
            if (s == "aitken")
                access(c) = RelaxationMode::aitken;
            else if (s == "fixed")
                access(c) = RelaxationMode::fixed;
            else
                throw ConfigError(k, e.line, "expected \"aitken\" or \"fixed\"");
        }
    };
    f.get = [access](RunConfig const& c) {
        auto const& v = access(c);
        if constexpr (std::is_same_v<T, double>)
            return format_number(v);
        else if constexpr (std::is_same_v<T, bool>)
            return std::string(v ? "true" : "false");
        else if constexpr (std::is_same_v<T, int> || std::is_same_v<T, std::size_t>)
            return std::to_string(v);
        else if constexpr (std::is_same_v<T, std::string>)
            return quote(v);
        else if constexpr (std::is_same_v<T, std::vector<double>>) {
            std::string out = "[";
            for (std::size_t i = 0; i < v.size(); ++i)
                out += (i ? ", " : "") + format_number(v[i]);
            return out + "]";
        } else if constexpr (std::is_same_v<T, Command>)
            return quote(to_string(v));
        else if constexpr (std::is_same_v<T, RelaxationMode>)
            return quote(v == RelaxationMode::aitken ? "aitken" : "fixed");
    };
    return f;
}

#define NEMATIC_FIELD(key, expr) field(key, [](auto& c) -> auto& { return c.expr; })

std::vector<Field> const& fields()
{
    static std::vector<Field> const table{
        NEMATIC_FIELD("command", command),
        NEMATIC_FIELD("output_dir", output_dir),
        NEMATIC_FIELD("timestamp", timestamp),
        NEMATIC_FIELD("params.H", params.H),
        NEMATIC_FIELD("params.mu", params.mu),
        NEMATIC_FIELD("params.lambda", params.lambda),
        NEMATIC_FIELD("params.b", params.b),
        NEMATIC_FIELD("params.a", params.a),
        NEMATIC_FIELD("params.alpha", params.alpha),
        NEMATIC_FIELD("grid.dx", grid.dx),
        NEMATIC_FIELD("grid.n_points", grid.n_points),
        NEMATIC_FIELD("grid.symmetric", grid.symmetric),
        NEMATIC_FIELD("shoot.bracket_lo", shoot.bracket_lo),
        NEMATIC_FIELD("shoot.bracket_hi", shoot.bracket_hi),
        NEMATIC_FIELD("shoot.max_bisections", shoot.max_bisections),
        NEMATIC_FIELD("shoot.blowup_factor", shoot.blowup_factor),
        NEMATIC_FIELD("shoot.monotonicity_tol", shoot.monotonicity_tol),
        NEMATIC_FIELD("shoot.tail_extension", shoot.tail_extension),
        NEMATIC_FIELD("shoot.rel_width_tol", shoot.rel_width_tol),
        NEMATIC_FIELD("shoot.max_widenings", shoot.max_widenings),
        NEMATIC_FIELD("picard.max_iters", picard.max_iters),
        NEMATIC_FIELD("picard.rel_tol", picard.rel_tol),
        NEMATIC_FIELD("picard.mode", picard.mode),
        NEMATIC_FIELD("picard.relaxation", picard.relaxation),
        NEMATIC_FIELD("picard.warm_brackets", picard.warm_brackets),
        NEMATIC_FIELD("picard.keep_iterates", picard.keep_iterates),
        NEMATIC_FIELD("sweep.mu_first", sweep.mu_first),
        NEMATIC_FIELD("sweep.mu_last", sweep.mu_last),
        NEMATIC_FIELD("sweep.count", sweep.count),
        NEMATIC_FIELD("sweep.h_values", sweep.h_values),
        NEMATIC_FIELD("sweep.warm_start", sweep.warm_start),
        NEMATIC_FIELD("sweep.jobs", sweep.jobs),
        NEMATIC_FIELD("evolution.T", evolution.T),
        NEMATIC_FIELD("evolution.dt", evolution.dt),
        NEMATIC_FIELD("evolution.stride", evolution.stride),
        NEMATIC_FIELD("evolution.snapshot_every", evolution.snapshot_every),
        NEMATIC_FIELD("evolution.delta", evolution.delta),
        NEMATIC_FIELD("evolution.bump_width", evolution.bump_width),
        NEMATIC_FIELD("evolution.drop_interaction", evolution.drop_interaction),
        NEMATIC_FIELD("support.theta", support.theta),
        NEMATIC_FIELD("support.delta", support.delta),
        NEMATIC_FIELD("support.deltas", support.deltas),
        NEMATIC_FIELD("support.times", support.times),
        NEMATIC_FIELD("support.u_amplitude", support.u_amplitude),
        NEMATIC_FIELD("support.rho_amplitude", support.rho_amplitude),
        NEMATIC_FIELD("support.half_length", support.half_length),
        NEMATIC_FIELD("support.dx", support.dx),
        NEMATIC_FIELD("support.dt", support.dt),
        NEMATIC_FIELD("diagnose.u_path", diagnose.u_path),
        NEMATIC_FIELD("diagnose.rho_path", diagnose.rho_path),
    };
    return table;
}

#undef NEMATIC_FIELD

}  // namespace

void apply_config(RunConfig& cfg, ConfigDocument const& doc)
{
    for (auto const& [key, entry] : doc) {
        auto const& table = fields();
        auto it = std::find_if(table.begin(), table.end(), [&](Field const& f) { return f.key == key; });
        if (it == table.end())
            throw ConfigError(key, entry.line, "unknown key");
        it->set(cfg, entry, key);
    }
}

bool is_integral_key(std::string const& key)
{
    auto const& table = fields();
    auto it = std::find_if(table.begin(), table.end(), [&](Field const& f) { return f.key == key; });
    return it != table.end() && it->integral;
}

void write_config(std::ostream& os, RunConfig const& cfg)
{
    std::string section;
    for (auto const& f : fields()) {
        auto const dot = f.key.find('.');
        std::string const sec = dot == std::string::npos ? "" : f.key.substr(0, dot);
        std::string const name = dot == std::string::npos ? f.key : f.key.substr(dot + 1);
        if (sec != section) {
            os << "\n[" << sec << "]\n";
            section = sec;
        }
        os << name << " = " << f.get(cfg) << '\n';
    }
}

}  // namespace nematic::cli
