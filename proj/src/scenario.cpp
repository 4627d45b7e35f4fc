#include "crackwake/scenario.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace crackwake {

ScenarioError::ScenarioError(Kind kind, int line, const std::string& message)
    : ValidationError("line " + std::to_string(line) + ": " + message), kind_(kind), line_(line) {}

namespace {

using Kind = ScenarioError::Kind;

// ---- tokens ---------------------------------------------------------------

enum class Tok { word, string, lbrace, rbrace, lbracket, rbracket, equals, comma, newline, end };

struct Token {
    Tok type;
    std::string text;
    int line;
};

bool is_word_char(char c) {
    return !(std::isspace(static_cast<unsigned char>(c)) || c == '{' || c == '}' || c == '[' ||
             c == ']' || c == '=' || c == ',' || c == '"' || c == '#');
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    int line = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            out.push_back({Tok::newline, "", line});
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (c == '"') {
            std::string s;
            ++i;
            while (true) {
                if (i >= text.size() || text[i] == '\n')
                    throw ScenarioError(Kind::syntax, line, "unterminated string");
                if (text[i] == '"') break;
                if (text[i] == '\\' && i + 1 < text.size() && (text[i + 1] == '"' || text[i + 1] == '\\'))
                    ++i;
                s += text[i++];
            }
            ++i;
            out.push_back({Tok::string, std::move(s), line});
        } else {
            Tok t = Tok::word;
            switch (c) {
                case '{': t = Tok::lbrace; break;
                case '}': t = Tok::rbrace; break;
                case '[': t = Tok::lbracket; break;
                case ']': t = Tok::rbracket; break;
                case '=': t = Tok::equals; break;
                case ',': t = Tok::comma; break;
                default: break;
            }
            if (t != Tok::word) {
                out.push_back({t, std::string(1, c), line});
                ++i;
                continue;
            }
            const std::size_t start = i;
            while (i < text.size() && is_word_char(text[i])) ++i;
            out.push_back({Tok::word, std::string(text.substr(start, i - start)), line});
        }
    }
    out.push_back({Tok::end, "", line});
    return out;
}

// ---- generic block tree ---------------------------------------------------

struct Value {
    std::vector<std::string> items;  // one item unless is_list
    bool is_list = false;
    bool quoted = false;
    int line = 0;
};

struct Block {
    std::string name;
    int line = 0;
    std::vector<std::pair<std::string, Value>> values;
    std::vector<Block> blocks;
};

std::string describe(const Token& t) {
    switch (t.type) {
        case Tok::word: return "'" + t.text + "'";
        case Tok::string: return "string \"" + t.text + "\"";
        case Tok::newline: return "end of line";
        case Tok::end: return "end of input";
        default: return "'" + t.text + "'";
    }
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    std::vector<Block> parse_file() {
        std::vector<Block> blocks;
        while (true) {
            skip_separators();
            if (peek().type == Tok::end) return blocks;
            const Token name = expect(Tok::word, "block name");
            expect(Tok::lbrace, "'{' after block name");
            blocks.push_back(parse_body(name));
        }
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }

    Token expect(Tok type, const char* what) {
        const Token t = next();
        if (t.type != type)
            throw ScenarioError(Kind::syntax, t.line,
                                std::string("expected ") + what + ", found " + describe(t));
        return t;
    }

    void skip_separators() {
        while (peek().type == Tok::newline || peek().type == Tok::comma) ++pos_;
    }

    void skip_newlines() {
        while (peek().type == Tok::newline) ++pos_;
    }

    Block parse_body(const Token& name) {
        Block b;
        b.name = name.text;
        b.line = name.line;
        while (true) {
            skip_separators();
            const Token t = next();
            if (t.type == Tok::rbrace) return b;
            if (t.type == Tok::end)
                throw ScenarioError(Kind::syntax, b.line, "block '" + b.name + "' is not closed");
            if (t.type != Tok::word)
                throw ScenarioError(Kind::syntax, t.line, "expected a key, found " + describe(t));
            const Token op = next();
            if (op.type == Tok::lbrace) {
                b.blocks.push_back(parse_body(t));
            } else if (op.type == Tok::equals) {
                b.values.emplace_back(t.text, parse_value());
                const Token& after = peek();
                if (after.type != Tok::newline && after.type != Tok::comma &&
                    after.type != Tok::rbrace)
                    throw ScenarioError(Kind::syntax, after.line,
                                        "unexpected " + describe(after) + " after value of '" +
                                            t.text + "'");
            } else {
                throw ScenarioError(Kind::syntax, op.line,
                                    "expected '=' or '{' after '" + t.text + "', found " +
                                        describe(op));
            }
        }
    }

    Value parse_value() {
        const Token t = next();
        Value v;
        v.line = t.line;
        if (t.type == Tok::word || t.type == Tok::string) {
            v.items.push_back(t.text);
            v.quoted = t.type == Tok::string;
            return v;
        }
        if (t.type != Tok::lbracket)
            throw ScenarioError(Kind::syntax, t.line, "expected a value, found " + describe(t));
        v.is_list = true;
        while (true) {
            skip_newlines();
            const Token item = next();
            if (item.type == Tok::rbracket) return v;
            if (item.type != Tok::word)
                throw ScenarioError(Kind::syntax, item.line,
                                    "expected a list item, found " + describe(item));
            v.items.push_back(item.text);
            skip_newlines();
            if (peek().type == Tok::comma) ++pos_;
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// ---- typed access -----------------------------------------------------------

double to_number(const std::string& text, int line, const std::string& key, bool angle) {
    std::string_view body = text;
    double factor = 1.0;
    if (angle && body.size() > 3 && body.substr(body.size() - 3) == "deg") {
        body.remove_suffix(3);
        factor = std::numbers::pi / 180.0;
    }
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec != std::errc() || end != body.data() + body.size() || body.empty())
        throw ScenarioError(Kind::syntax, line, "'" + key + "' expects a number, got '" + text + "'");
    return v * factor;
}

class Fields {
public:
    Fields(const Block& b, std::set<std::string> allowed) : block_(b) {
        for (const auto& [key, value] : b.values) {
            if (!allowed.count(key))
                throw ScenarioError(Kind::unknown_key, value.line,
                                    "unknown key '" + key + "' in block '" + b.name + "'");
            if (!map_.emplace(key, &value).second)
                throw ScenarioError(Kind::syntax, value.line,
                                    "duplicate key '" + key + "' in block '" + b.name + "'");
        }
    }

    bool has(const std::string& key) const { return map_.count(key) > 0; }

    const Value& raw(const std::string& key) const {
        const auto it = map_.find(key);
        if (it == map_.end())
            throw ScenarioError(Kind::invalid, block_.line,
                                "block '" + block_.name + "' needs key '" + key + "'");
        return *it->second;
    }

    const std::string& scalar(const std::string& key) const {
        const Value& v = raw(key);
        if (v.is_list)
            throw ScenarioError(Kind::syntax, v.line, "'" + key + "' expects a single value");
        return v.items.front();
    }

    double number(const std::string& key, bool angle = false) const {
        const Value& v = raw(key);
        if (v.is_list || v.quoted)
            throw ScenarioError(Kind::syntax, v.line, "'" + key + "' expects a number");
        return to_number(v.items.front(), v.line, key, angle);
    }

    std::optional<double> number_opt(const std::string& key, bool angle = false) const {
        if (!has(key)) return std::nullopt;
        return number(key, angle);
    }

    int integer(const std::string& key) const {
        const Value& v = raw(key);
        const std::string& s = scalar(key);
        int out = 0;
        const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec != std::errc() || end != s.data() + s.size())
            throw ScenarioError(Kind::syntax, v.line, "'" + key + "' expects an integer");
        return out;
    }

    std::vector<double> list(const std::string& key) const {
        const Value& v = raw(key);
        if (!v.is_list) throw ScenarioError(Kind::syntax, v.line, "'" + key + "' expects a list [...]");
        std::vector<double> out;
        for (const auto& item : v.items) out.push_back(to_number(item, v.line, key, false));
        return out;
    }

    int line(const std::string& key) const { return raw(key).line; }

private:
    const Block& block_;
    std::map<std::string, const Value*> map_;
};

void no_children(const Block& b) {
    if (!b.blocks.empty())
        throw ScenarioError(Kind::unknown_key, b.blocks.front().line,
                            "unexpected block '" + b.blocks.front().name + "' inside '" + b.name +
                                "'");
}

template <typename F>
auto checked(int line, F&& f) {
    try {
        return f();
    } catch (const ScenarioError&) {
        throw;
    } catch (const ValidationError& e) {
        throw ScenarioError(Kind::invalid, line, e.what());
    }
}

Bimaterial read_bimaterial(const Block& b) {
    no_children(b);
    const Fields f(b, {"mu_plus", "mu_minus"});
    Bimaterial out{f.number("mu_plus"), f.number("mu_minus")};
    checked(b.line, [&] {
        validate(out);
        return 0;
    });
    return out;
}

PointForce read_force(const Block& b) {
    no_children(b);
    const Fields f(b, {"face", "x1", "p"});
    PointForce out;
    const std::string& face = f.scalar("face");
    if (face == "+" || face == "upper")
        out.face = Face::upper;
    else if (face == "-" || face == "lower")
        out.face = Face::lower;
    else
        throw ScenarioError(Kind::invalid, f.line("face"),
                            "face must be \"+\" or \"-\", got '" + face + "'");
    out.x1 = f.number("x1");
    out.magnitude = f.number("p");
    return out;
}

ThreePointSpec read_three_point(const Block& b) {
    no_children(b);
    const Fields f(b, {"P", "a", "b"});
    ThreePointSpec out{f.number("P"), f.number("a"), f.number_opt("b").value_or(0.0)};
    checked(b.line, [&] { return three_point_preset(out.P, out.a, out.b); });
    return out;
}

DistributedLoad read_distributed(const Block& b) {
    no_children(b);
    const Fields f(b, {"x1", "avg", "jump"});
    DistributedLoad out;
    out.x1 = f.list("x1");
    out.avg = f.has("avg") ? f.list("avg") : std::vector<double>(out.x1.size(), 0.0);
    out.jump = f.has("jump") ? f.list("jump") : std::vector<double>(out.x1.size(), 0.0);
    return out;
}

LoadingSpec read_loading(const Block& b) {
    const Fields f(b, {"tip_clearance"});
    LoadingSpec out;
    out.tip_clearance = f.number_opt("tip_clearance").value_or(kDefaultTipClearance);
    for (const auto& child : b.blocks) {
        if (child.name == "force") {
            out.items.emplace_back(read_force(child));
        } else if (child.name == "three_point") {
            out.items.emplace_back(read_three_point(child));
        } else if (child.name == "distributed") {
            if (out.distributed)
                throw ScenarioError(Kind::missing_block, child.line,
                                    "only one distributed block is allowed per loading");
            out.distributed = read_distributed(child);
        } else {
            throw ScenarioError(Kind::unknown_key, child.line,
                                "unknown block '" + child.name + "' in loading");
        }
    }
    checked(b.line, [&] { return check_balance(out.build(), out.tip_clearance); });
    return out;
}

DefectSpec read_defect(const Block& b) {
    no_children(b);
    const Fields f(b, {"kind", "x", "y", "d", "phi", "alpha", "la", "lb", "mu_star", "kappa"});
    DefectSpec out;
    Defect& d = out.defect;
    const std::string& kind = f.scalar("kind");
    const auto parsed = parse_defect_kind(kind);
    if (!parsed) throw ScenarioError(Kind::invalid, f.line("kind"), "unknown defect kind '" + kind + "'");
    d.kind = *parsed;

    const bool cart = f.has("x") || f.has("y");
    const bool polar = f.has("d") || f.has("phi");
    if (cart == polar)
        throw ScenarioError(Kind::invalid, b.line, "defect needs either x, y or d, phi");
    if (cart) {
        d.center = Eigen::Vector2d(f.number("x"), f.number("y"));
    } else {
        const double dist = f.number("d");
        const double phi = f.number("phi", true);
        out.polar = std::make_pair(dist, phi);
        d.center = Eigen::Vector2d(dist * std::cos(phi), dist * std::sin(phi));
    }
    d.alpha = f.number_opt("alpha", true).value_or(0.0);
    d.la = f.number("la");
    if (f.has("lb"))
        d.lb = f.number("lb");
    else if (!is_line_kind(d.kind))
        throw ScenarioError(Kind::invalid, b.line, std::string(to_string(d.kind)) + " needs 'lb'");
    if (d.kind == DefectKind::elastic_ellipse) d.mu_star = f.number("mu_star");
    else d.mu_star = f.number_opt("mu_star").value_or(1.0);
    if (d.kind == DefectKind::soft_line || d.kind == DefectKind::stiff_line)
        d.kappa = f.number("kappa");
    else
        d.kappa = f.number_opt("kappa").value_or(0.0);
    checked(b.line, [&] {
        validate(d);
        return 0;
    });
    if (!(d.center.norm() > 0.0))
        throw ScenarioError(Kind::invalid, b.line, "defect centre must differ from the crack tip");
    return out;
}

RunParams read_run(const Block& b) {
    no_children(b);
    const Fields f(b, {"grid", "delta", "max_iter", "arrest_tol", "pair", "d2", "out", "pgm"});
    RunParams out;
    if (f.has("grid")) {
        out.grid = parse_grid(f.scalar("grid"));
        if (!out.grid)
            throw ScenarioError(Kind::invalid, f.line("grid"), "grid must look like 128x64 (each >= 2)");
    }
    out.delta = f.number_opt("delta");
    if (out.delta && !(*out.delta > 0.0))
        throw ScenarioError(Kind::invalid, f.line("delta"), "delta must be positive");
    if (f.has("max_iter")) {
        out.max_iter = f.integer("max_iter");
        if (*out.max_iter < 1)
            throw ScenarioError(Kind::invalid, f.line("max_iter"), "max_iter must be at least 1");
    }
    out.arrest_tol = f.number_opt("arrest_tol");
    if (out.arrest_tol && !(*out.arrest_tol > 0.0))
        throw ScenarioError(Kind::invalid, f.line("arrest_tol"), "arrest_tol must be positive");
    if (f.has("pair")) {
        out.pair = parse_pair_kind(f.scalar("pair"));
        if (!out.pair) throw ScenarioError(Kind::invalid, f.line("pair"), "pair must be a or b");
    }
    out.d2 = f.number_opt("d2");
    if (out.d2 && !(*out.d2 > 0.0))
        throw ScenarioError(Kind::invalid, f.line("d2"), "d2 must be positive");
    if (f.has("out")) out.out = f.scalar("out");
    if (f.has("pgm")) out.pgm = f.scalar("pgm");
    return out;
}

// ---- dump -------------------------------------------------------------------

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string list(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + num(v[i]);
    return out + "]";
}

}  // namespace

Loading LoadingSpec::build() const {
    Loading out;
    for (const auto& item : items) {
        if (const auto* f = std::get_if<PointForce>(&item)) {
            out.point_forces.push_back(*f);
        } else {
            const auto& t = std::get<ThreePointSpec>(item);
            const Loading preset = three_point_preset(t.P, t.a, t.b);
            out.point_forces.insert(out.point_forces.end(), preset.point_forces.begin(),
                                    preset.point_forces.end());
        }
    }
    out.distributed = distributed;
    return out;
}

std::vector<Defect> Scenario::defect_list() const {
    std::vector<Defect> out;
    out.reserve(defects.size());
    for (const auto& d : defects) out.push_back(d.defect);
    return out;
}

std::optional<std::pair<int, int>> parse_grid(std::string_view text) {
    const auto x = text.find('x');
    if (x == std::string_view::npos) return std::nullopt;
    int n = 0;
    int m = 0;
    const auto a = std::from_chars(text.data(), text.data() + x, n);
    const auto b = std::from_chars(text.data() + x + 1, text.data() + text.size(), m);
    if (a.ec != std::errc() || a.ptr != text.data() + x || b.ec != std::errc() ||
        b.ptr != text.data() + text.size() || n < 2 || m < 2)
        return std::nullopt;
    return std::make_pair(n, m);
}

Scenario parse_scenario(std::string_view text) {
    const std::vector<Block> blocks = Parser(tokenize(text)).parse_file();
    Scenario out;
    const Block* bimat = nullptr;
    const Block* loading = nullptr;
    const Block* run = nullptr;
    std::vector<const Block*> defects;
    const auto unique = [](const Block*& slot, const Block& b) {
        if (slot)
            throw ScenarioError(Kind::missing_block, b.line,
                                "duplicate '" + b.name + "' block (first at line " +
                                    std::to_string(slot->line) + ")");
        slot = &b;
    };
    for (const auto& b : blocks) {
        if (b.name == "bimaterial") unique(bimat, b);
        else if (b.name == "loading") unique(loading, b);
        else if (b.name == "run") unique(run, b);
        else if (b.name == "defect") defects.push_back(&b);
        else throw ScenarioError(Kind::unknown_key, b.line, "unknown block '" + b.name + "'");
    }
    const int last = blocks.empty() ? 1 : blocks.back().line;
    if (!bimat) throw ScenarioError(Kind::missing_block, last, "missing 'bimaterial' block");
    if (!loading) throw ScenarioError(Kind::missing_block, last, "missing 'loading' block");

    out.bimaterial = read_bimaterial(*bimat);
    out.loading = read_loading(*loading);
    for (const Block* d : defects) out.defects.push_back(read_defect(*d));
    if (run) out.run = read_run(*run);
    return out;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario(text.str());
}

std::string dump_scenario(const Scenario& s) {
    std::ostringstream os;
    os << "bimaterial {\n    mu_plus = " << num(s.bimaterial.mu_plus)
       << "\n    mu_minus = " << num(s.bimaterial.mu_minus) << "\n}\n\nloading {\n";
    os << "    tip_clearance = " << num(s.loading.tip_clearance) << "\n";
    for (const auto& item : s.loading.items) {
        if (const auto* f = std::get_if<PointForce>(&item)) {
            os << "    force { face = \"" << (f->face == Face::upper ? '+' : '-')
               << "\", x1 = " << num(f->x1) << ", p = " << num(f->magnitude) << " }\n";
        } else {
            const auto& t = std::get<ThreePointSpec>(item);
            os << "    three_point { P = " << num(t.P) << ", a = " << num(t.a)
               << ", b = " << num(t.b) << " }\n";
        }
    }
    if (const auto& t = s.loading.distributed) {
        os << "    distributed {\n        x1 = " << list(t->x1) << "\n        avg = " << list(t->avg)
           << "\n        jump = " << list(t->jump) << "\n    }\n";
    }
    os << "}\n";
    for (const auto& spec : s.defects) {
        const Defect& d = spec.defect;
        os << "\ndefect {\n    kind = " << to_string(d.kind) << "\n";
        if (spec.polar)
            os << "    d = " << num(spec.polar->first) << "\n    phi = " << num(spec.polar->second) << "\n";
        else
            os << "    x = " << num(d.center.x()) << "\n    y = " << num(d.center.y()) << "\n";
        os << "    alpha = " << num(d.alpha) << "\n    la = " << num(d.la) << "\n    lb = " << num(d.lb)
           << "\n    mu_star = " << num(d.mu_star) << "\n    kappa = " << num(d.kappa) << "\n}\n";
    }
    const RunParams& r = s.run;
    if (r != RunParams{}) {
        os << "\nrun {\n";
        if (r.grid) os << "    grid = " << r.grid->first << 'x' << r.grid->second << "\n";
        if (r.delta) os << "    delta = " << num(*r.delta) << "\n";
        if (r.max_iter) os << "    max_iter = " << *r.max_iter << "\n";
        if (r.arrest_tol) os << "    arrest_tol = " << num(*r.arrest_tol) << "\n";
        if (r.pair) os << "    pair = " << to_string(*r.pair) << "\n";
        if (r.d2) os << "    d2 = " << num(*r.d2) << "\n";
        if (r.out) os << "    out = " << quoted(*r.out) << "\n";
        if (r.pgm) os << "    pgm = " << quoted(*r.pgm) << "\n";
        os << "}\n";
    }
    return os.str();
}

}  // namespace crackwake
