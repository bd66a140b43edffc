#include "spps/problem_file.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace spps {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw StructureError("line " + std::to_string(line) + ": " + what);
}

std::string_view strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

struct Entry {
    std::string value;
    int line;
};

struct Section {
    std::string name;
    int line;
    std::map<std::string, Entry> entries;
};

std::vector<Section> split_sections(std::string_view text) {
    std::vector<Section> sections;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const std::string_view line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            sections.push_back(Section{std::string(trim(line.substr(1, line.size() - 2))), line_no, {}});
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected key = value");
        if (sections.empty()) fail(line_no, "key outside any section");
        const std::string key(trim(line.substr(0, eq)));
        if (key.empty()) fail(line_no, "missing key");
        auto& entries = sections.back().entries;
        if (entries.count(key)) fail(line_no, "duplicate key '" + key + "'");
        entries.emplace(key, Entry{std::string(trim(line.substr(eq + 1))), line_no});
    }
    return sections;
}

std::string unquote(const Entry& e) {
    const std::string& v = e.value;
    if (v.size() < 2 || v.front() != '"' || v.back() != '"') fail(e.line, "expected a quoted expression");
    return v.substr(1, v.size() - 2);
}

Expression expression_of(const Entry& e) {
    try {
        return Expression::parse(unquote(e));
    } catch (const ParseError& err) {
        fail(e.line, err.what());
    }
}

cplx constant_of(const Entry& e, std::string_view text) {
    std::string t(trim(text));
    if (t.size() >= 2 && t.front() == '"' && t.back() == '"') t = t.substr(1, t.size() - 2);
    try {
        const cplx z = parse_constant(t);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) fail(e.line, "non-finite constant");
        return z;
    } catch (const ParseError& err) {
        fail(e.line, err.what());
    } catch (const EvalError& err) {
        fail(e.line, err.what());
    }
}

double real_of(const Entry& e) {
    const cplx z = constant_of(e, e.value);
    if (z.imag() != 0.0) fail(e.line, "expected a real value");
    return z.real();
}

long integer_of(const Entry& e) {
    const double v = real_of(e);
    if (v != std::floor(v) || std::abs(v) > 1e15) fail(e.line, "expected an integer");
    return static_cast<long>(v);
}

std::vector<cplx> list_of(const Entry& e) {
    std::string_view v = e.value;
    if (v.size() < 2 || v.front() != '[' || v.back() != ']') fail(e.line, "expected a list [c0, c1, ...]");
    v = trim(v.substr(1, v.size() - 2));
    std::vector<cplx> out;
    if (v.empty()) return out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = v.find(',', start);
        const std::string_view item = trim(v.substr(start, comma == std::string_view::npos ? v.npos : comma - start));
        if (item.empty()) fail(e.line, "empty list element");
        out.push_back(constant_of(e, item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

using Handler = std::map<std::string, const Entry*>;

Handler take(const Section& s, std::initializer_list<const char*> allowed) {
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    Handler h;
    for (const auto& [k, e] : s.entries) {
        if (!ok.count(k)) fail(e.line, "unknown key '" + k + "' in [" + s.name + "]");
        h[k] = &e;
    }
    return h;
}

const Entry& required(const Handler& h, const Section& s, const char* key) {
    const auto it = h.find(key);
    if (it == h.end()) fail(s.line, std::string("[") + s.name + "] needs '" + key + "'");
    return *it->second;
}

DerivativeForm form_of(const Entry& e) {
    if (e.value == "u_prime") return DerivativeForm::u_prime;
    if (e.value == "p_u_prime") return DerivativeForm::p_u_prime;
    fail(e.line, "derivative must be u_prime or p_u_prime");
}

std::string join(const std::vector<cplx>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_complex(v[i]);
    }
    return out + "]";
}

std::string number17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16g", v);
    return buf;
}

std::string format_complex(cplx z) {
    if (z.imag() == 0.0) return number17(z.real());
    std::string out = number17(z.real());
    if (!std::signbit(z.imag())) out += '+';
    return out + number17(z.imag()) + "i";
}

std::string_view policy_name(ShiftPolicy policy) {
    switch (policy) {
        case ShiftPolicy::always_previous: return "always_previous";
        case ShiftPolicy::previous_if_upper_half: return "previous_if_upper_half";
        case ShiftPolicy::fixed_center: return "fixed_center";
    }
    return "always_previous";
}

ShiftPolicy parse_policy(std::string_view name) {
    for (ShiftPolicy p : {ShiftPolicy::always_previous, ShiftPolicy::previous_if_upper_half,
                          ShiftPolicy::fixed_center}) {
        if (policy_name(p) == name) return p;
    }
    throw ConfigurationError("unknown shift policy '" + std::string(name) +
                             "' (always_previous, previous_if_upper_half, fixed_center)");
}

bool ProblemFile::has_particular() const {
    return !pieces.empty() && pieces.front().f.has_value();
}

std::vector<Piece> ProblemFile::coefficient_pieces() const {
    std::vector<Piece> out;
    out.reserve(pieces.size());
    for (const auto& pc : pieces) out.push_back(Piece{pc.lo, pc.hi, pc.p, pc.q, pc.r});
    return out;
}

ProblemFile parse_problem(std::string_view text) {
    ProblemFile file;
    bool seen_problem = false, seen_left = false, seen_right = false, seen_solver = false;
    for (const Section& s : split_sections(text)) {
        if (s.name == "problem") {
            if (seen_problem) fail(s.line, "duplicate [problem] section");
            seen_problem = true;
            const Handler h = take(s, {"a", "b"});
            file.interval = Interval{real_of(required(h, s, "a")), real_of(required(h, s, "b"))};
            if (!(file.interval.a < file.interval.b)) fail(s.line, "interval needs a < b");
        } else if (s.name == "piece") {
            const Handler h = take(s, {"lo", "hi", "p", "q", "r", "f", "f_prime", "pf_prime"});
            PieceSpec pc{real_of(required(h, s, "lo")), real_of(required(h, s, "hi")),
                         expression_of(required(h, s, "p")), expression_of(required(h, s, "q")),
                         expression_of(required(h, s, "r")), std::nullopt, std::nullopt,
                         DerivativeForm::u_prime};
            if (h.count("f_prime") && h.count("pf_prime")) fail(s.line, "give f_prime or pf_prime, not both");
            if (h.count("f")) {
                pc.f = expression_of(*h.at("f"));
                if (h.count("f_prime")) {
                    pc.f_derivative = expression_of(*h.at("f_prime"));
                } else if (h.count("pf_prime")) {
                    pc.f_derivative = expression_of(*h.at("pf_prime"));
                    pc.f_derivative_form = DerivativeForm::p_u_prime;
                } else {
                    fail(s.line, "f needs f_prime or pf_prime");
                }
            } else if (h.count("f_prime") || h.count("pf_prime")) {
                fail(s.line, "derivative of f given without f");
            }
            file.pieces.push_back(std::move(pc));
        } else if (s.name == "boundary.left" || s.name == "boundary.right") {
            const bool left = s.name == "boundary.left";
            bool& seen = left ? seen_left : seen_right;
            if (seen) fail(s.line, "duplicate [" + s.name + "] section");
            seen = true;
            const Handler h = take(s, {"alpha", "beta", "derivative"});
            BoundaryCondition bc{left ? Endpoint::left : Endpoint::right,
                                 h.count("alpha") ? list_of(*h.at("alpha")) : std::vector<cplx>{},
                                 h.count("beta") ? list_of(*h.at("beta")) : std::vector<cplx>{},
                                 h.count("derivative") ? form_of(*h.at("derivative"))
                                                       : DerivativeForm::p_u_prime};
            try {
                bc.validate();
            } catch (const StructureError& e) {
                fail(s.line, e.what());
            }
            (left ? file.left : file.right) = std::move(bc);
        } else if (s.name == "solver") {
            if (seen_solver) fail(s.line, "duplicate [solver] section");
            seen_solver = true;
            const Handler h = take(s, {"n_powers", "mesh", "delta", "policy", "max_eigenvalues",
                                       "threshold", "particular_lambda"});
            SolverSettings& st = file.solver;
            if (h.count("n_powers")) {
                const long n = integer_of(*h.at("n_powers"));
                if (n < 1 || n > 1000) fail(h.at("n_powers")->line, "n_powers must be in 1..1000");
                st.n_powers = static_cast<int>(n);
            }
            if (h.count("mesh")) {
                const long m = integer_of(*h.at("mesh"));
                if (m < 5) fail(h.at("mesh")->line, "mesh must be at least 5");
                st.mesh = static_cast<std::size_t>(m);
            }
            if (h.count("delta")) st.delta = constant_of(*h.at("delta"), h.at("delta")->value);
            if (h.count("policy")) {
                try {
                    st.policy = parse_policy(h.at("policy")->value);
                } catch (const ConfigurationError& e) {
                    fail(h.at("policy")->line, e.what());
                }
            }
            if (h.count("max_eigenvalues")) {
                const long n = integer_of(*h.at("max_eigenvalues"));
                if (n < 0) fail(h.at("max_eigenvalues")->line, "max_eigenvalues must be non-negative");
                st.max_eigenvalues = static_cast<int>(n);
            }
            if (h.count("threshold")) {
                st.threshold = real_of(*h.at("threshold"));
                if (!(st.threshold > 0.0)) fail(h.at("threshold")->line, "threshold must be positive");
            }
            if (h.count("particular_lambda")) {
                st.particular_lambda = constant_of(*h.at("particular_lambda"), h.at("particular_lambda")->value);
            }
        } else {
            fail(s.line, "unknown section [" + s.name + "]");
        }
    }
    if (!seen_problem) throw StructureError("missing [problem] section");
    if (file.pieces.empty()) throw StructureError("at least one [piece] section is required");
    if (!seen_left || !seen_right) throw StructureError("both [boundary.left] and [boundary.right] are required");
    const bool with_f = file.pieces.front().f.has_value();
    for (const auto& pc : file.pieces) {
        if (pc.f.has_value() != with_f) throw StructureError("f must be given on every piece or on none");
    }
    return file;
}

std::string serialize_problem(const ProblemFile& file) {
    std::ostringstream os;
    os << "[problem]\n"
       << "a = " << number17(file.interval.a) << "\n"
       << "b = " << number17(file.interval.b) << "\n";
    for (const auto& pc : file.pieces) {
        os << "\n[piece]\n"
           << "lo = " << number17(pc.lo) << "\n"
           << "hi = " << number17(pc.hi) << "\n"
           << "p = \"" << pc.p.source() << "\"\n"
           << "q = \"" << pc.q.source() << "\"\n"
           << "r = \"" << pc.r.source() << "\"\n";
        if (pc.f) {
            os << "f = \"" << pc.f->source() << "\"\n"
               << (pc.f_derivative_form == DerivativeForm::u_prime ? "f_prime" : "pf_prime") << " = \""
               << pc.f_derivative->source() << "\"\n";
        }
    }
    for (const BoundaryCondition* bc : {&file.left, &file.right}) {
        os << "\n[boundary." << (bc == &file.left ? "left" : "right") << "]\n"
           << "alpha = " << join(bc->alpha) << "\n"
           << "beta = " << join(bc->beta) << "\n"
           << "derivative = " << (bc->derivative_form == DerivativeForm::u_prime ? "u_prime" : "p_u_prime")
           << "\n";
    }
    const SolverSettings& st = file.solver;
    os << "\n[solver]\n"
       << "n_powers = " << st.n_powers << "\n"
       << "mesh = " << st.mesh << "\n"
       << "delta = " << format_complex(st.delta) << "\n"
       << "policy = " << policy_name(st.policy) << "\n"
       << "max_eigenvalues = " << st.max_eigenvalues << "\n"
       << "threshold = " << number17(st.threshold) << "\n"
       << "particular_lambda = " << format_complex(st.particular_lambda) << "\n";
    return os.str();
}

ProblemFile load_problem(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read problem file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_problem(ss.str());
    } catch (const StructureError& e) {
        throw StructureError(path.string() + ": " + e.what());
    }
}

bool same_problem(const ProblemFile& a, const ProblemFile& b) {
    auto same_opt = [](const std::optional<Expression>& x, const std::optional<Expression>& y) {
        if (x.has_value() != y.has_value()) return false;
        return !x || x->structurally_equal(*y);
    };
    auto same_bc = [](const BoundaryCondition& x, const BoundaryCondition& y) {
        return x.endpoint == y.endpoint && x.alpha == y.alpha && x.beta == y.beta &&
               x.derivative_form == y.derivative_form;
    };
    if (a.interval.a != b.interval.a || a.interval.b != b.interval.b) return false;
    if (a.pieces.size() != b.pieces.size()) return false;
    for (std::size_t i = 0; i < a.pieces.size(); ++i) {
        const auto& x = a.pieces[i];
        const auto& y = b.pieces[i];
        if (x.lo != y.lo || x.hi != y.hi || !x.p.structurally_equal(y.p) || !x.q.structurally_equal(y.q) ||
            !x.r.structurally_equal(y.r) || !same_opt(x.f, y.f) || !same_opt(x.f_derivative, y.f_derivative) ||
            (x.f && x.f_derivative_form != y.f_derivative_form)) {
            return false;
        }
    }
    const SolverSettings& s = a.solver;
    const SolverSettings& t = b.solver;
    return same_bc(a.left, b.left) && same_bc(a.right, b.right) && s.n_powers == t.n_powers &&
           s.mesh == t.mesh && s.delta == t.delta && s.policy == t.policy &&
           s.max_eigenvalues == t.max_eigenvalues && s.threshold == t.threshold &&
           s.particular_lambda == t.particular_lambda;
}

PreparedProblem prepare(const ProblemFile& file) {
    const std::vector<Piece> pieces = file.coefficient_pieces();
    auto discrete = make_discrete_problem(file.interval, pieces, file.solver.mesh);

    std::optional<ParticularSolution> particular;
    if (file.has_particular()) {
        std::vector<Expression> f, d;
        for (const auto& pc : file.pieces) {
            f.push_back(*pc.f);
            d.push_back(*pc.f_derivative);
        }
        SampledFunction fs = sample_piecewise(discrete->mesh, f);
        SampledFunction ds = sample_piecewise(discrete->mesh, d);
        if (file.pieces.front().f_derivative_form == DerivativeForm::u_prime) {
            std::vector<cplx> pf(ds.size());
            for (std::size_t s = 0; s < pf.size(); ++s) pf[s] = discrete->p[s] * ds[s];
            ds = SampledFunction(discrete->mesh, std::move(pf));
        }
        particular = make_particular_solution(*discrete, std::move(fs), std::move(ds),
                                              file.solver.particular_lambda);
    }

    SweepConfig config;
    config.n_terms = file.solver.n_powers;
    config.schedule = ShiftSchedule{file.solver.delta, file.solver.policy, file.solver.max_eigenvalues};
    config.accept_threshold = file.solver.threshold;
    config.storage = PowerStorage::streaming;

    return PreparedProblem{SpectralProblem{discrete, file.left, file.right, std::move(particular)},
                           ShootingProblem{file.interval, pieces, file.left, file.right}, config};
}

std::vector<ReferenceValue> parse_references(std::string_view text) {
    std::vector<ReferenceValue> out;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(strip_comment(raw));
        if (line.empty()) continue;
        std::istringstream fields{std::string(line)};
        ReferenceValue r{};
        double re = 0.0, im = 0.0;
        std::string extra;
        if (!(fields >> r.index >> re >> im >> r.tolerance) || (fields >> extra)) {
            fail(line_no, "expected 'n re im tolerance'");
        }
        if (!(r.tolerance > 0.0)) fail(line_no, "tolerance must be positive");
        r.value = cplx(re, im);
        out.push_back(r);
    }
    return out;
}

std::vector<ReferenceValue> load_references(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read reference file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_references(ss.str());
    } catch (const StructureError& e) {
        throw StructureError(path.string() + ": " + e.what());
    }
}

}  // namespace spps
