#include "cli_config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "netadopt/io_util.hpp"

namespace netadopt::cli {

namespace {

std::vector<double> parse_real_list(const std::string& value, const std::string& what) {
    std::vector<double> out;
    for (const std::string& cell : split(value, ','))
        out.push_back(parse_real(cell, what));
    return out;
}

std::vector<int> parse_int_list(const std::string& value, const std::string& what) {
    std::vector<int> out;
    for (const std::string& cell : split(value, ','))
        out.push_back(parse_int(cell, what));
    return out;
}

bool parse_bool(const std::string& value, const std::string& what) {
    const std::string v = trim(value);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("invalid boolean for " + what + ": '" + value + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    DistributionSpec dist;
    bool dist_seen = false;
    SweepSpec sweep;
    bool sweep_seen = false;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    while (std::getline(in, raw)) {
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            if (section != "params" && section != "distribution" && section != "policy" &&
                section != "optimize" && section != "sweep" && section != "finite" &&
                section != "figure" && section != "output")
                throw std::invalid_argument("unknown config section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw std::invalid_argument("key '" + key + "' appears before any section");

        if (section == "params") {
            if (key == "a0h") cfg.a0h = parse_real(value, key);
            else if (key == "a1h") cfg.a1h = parse_real(value, key);
            else if (key == "a0l") cfg.a0l = parse_real(value, key);
            else if (key == "a1l") cfg.a1l = parse_real(value, key);
            else if (key == "p") cfg.p = parse_real(value, key);
            else throw std::invalid_argument("unknown [params] key '" + key + "'");
        } else if (section == "distribution") {
            dist_seen = true;
            if (key == "kind") dist.kind = value;
            else if (key == "d") dist.d = parse_int(value, key);
            else if (key == "d_l") dist.d_l = parse_int(value, key);
            else if (key == "d_u") dist.d_u = parse_int(value, key);
            else if (key == "q") dist.q = parse_real(value, key);
            else if (key == "m") dist.m = parse_real(value, key);
            else if (key == "r") dist.r = parse_real(value, key);
            else if (key == "d_max") dist.d_max = parse_int(value, key);
            else if (key == "file") dist.file = value;
            else throw std::invalid_argument("unknown [distribution] key '" + key + "'");
        } else if (section == "policy") {
            if (key == "p0") cfg.p0 = parse_real(value, key);
            else if (key == "p1") cfg.p1 = parse_real(value, key);
            else if (key == "eta") cfg.eta = parse_real(value, key);
            else if (key == "cap") cfg.cap = parse_int(value, key);
            else if (key == "uninformed") cfg.uninformed = parse_bool(value, key);
            else throw std::invalid_argument("unknown [policy] key '" + key + "'");
        } else if (section == "optimize") {
            if (key == "class") cfg.policy_class = value;
            else if (key == "price_grid") cfg.price_grid = parse_int(value, key);
            else throw std::invalid_argument("unknown [optimize] key '" + key + "'");
        } else if (section == "sweep") {
            sweep_seen = true;
            if (key == "variable") sweep.variable = value;
            else if (key == "from") sweep.from = parse_real(value, key);
            else if (key == "to") sweep.to = parse_real(value, key);
            else if (key == "step") sweep.step = parse_real(value, key);
            else throw std::invalid_argument("unknown [sweep] key '" + key + "'");
        } else if (section == "finite") {
            if (key == "topology") cfg.finite.topology = value;
            else if (key == "n") cfg.finite.n = parse_int(value, key);
            else throw std::invalid_argument("unknown [finite] key '" + key + "'");
        } else if (section == "figure") {
            if (key == "curves_m") cfg.figure_curves_m = parse_real_list(value, key);
            else if (key == "caps") cfg.figure_caps = parse_int_list(value, key);
            else throw std::invalid_argument("unknown [figure] key '" + key + "'");
        } else {  // output
            if (key == "dir") cfg.out_dir = value;
            else if (key == "svg") cfg.svg = parse_bool(value, key);
            else throw std::invalid_argument("unknown [output] key '" + key + "'");
        }
    }
    if (dist_seen) cfg.distribution = dist;
    if (sweep_seen) {
        if (sweep.variable.empty())
            throw std::invalid_argument("[sweep] needs a 'variable' key");
        if (sweep.step <= 0.0 || sweep.to < sweep.from)
            throw std::invalid_argument("[sweep] range is empty");
        cfg.sweep = sweep;
    }
    return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "[params]\n";
    out << "a0h=" << format_real(cfg.a0h) << "\n";
    out << "a1h=" << format_real(cfg.a1h) << "\n";
    out << "a0l=" << format_real(cfg.a0l) << "\n";
    out << "a1l=" << format_real(cfg.a1l) << "\n";
    out << "p=" << format_real(cfg.p) << "\n";
    if (cfg.distribution) {
        const DistributionSpec& d = *cfg.distribution;
        out << "[distribution]\n";
        out << "kind=" << d.kind << "\n";
        if (d.kind == "regular") out << "d=" << d.d << "\n";
        if (d.kind == "two_degree")
            out << "d_l=" << d.d_l << "\nd_u=" << d.d_u << "\nq=" << format_real(d.q) << "\n";
        if (d.kind == "jackson_rogers")
            out << "m=" << format_real(d.m) << "\nr=" << format_real(d.r)
                << "\nd_max=" << d.d_max << "\n";
        if (d.kind == "pmf") out << "file=" << d.file << "\n";
    }
    out << "[policy]\n";
    out << "p0=" << format_real(cfg.p0) << "\n";
    out << "p1=" << format_real(cfg.p1) << "\n";
    out << "eta=" << format_real(cfg.eta) << "\n";
    if (cfg.cap) out << "cap=" << *cfg.cap << "\n";
    out << "uninformed=" << (cfg.uninformed ? "true" : "false") << "\n";
    out << "[optimize]\n";
    out << "class=" << cfg.policy_class << "\n";
    out << "price_grid=" << cfg.price_grid << "\n";
    if (cfg.sweep) {
        out << "[sweep]\n";
        out << "variable=" << cfg.sweep->variable << "\n";
        out << "from=" << format_real(cfg.sweep->from) << "\n";
        out << "to=" << format_real(cfg.sweep->to) << "\n";
        out << "step=" << format_real(cfg.sweep->step) << "\n";
    }
    out << "[finite]\n";
    out << "topology=" << cfg.finite.topology << "\n";
    out << "n=" << cfg.finite.n << "\n";
    out << "[figure]\n";
    out << "curves_m=";
    for (std::size_t i = 0; i < cfg.figure_curves_m.size(); ++i)
        out << (i ? "," : "") << format_real(cfg.figure_curves_m[i]);
    out << "\ncaps=";
    for (std::size_t i = 0; i < cfg.figure_caps.size(); ++i)
        out << (i ? "," : "") << cfg.figure_caps[i];
    out << "\n[output]\n";
    out << "dir=" << cfg.out_dir << "\n";
    out << "svg=" << (cfg.svg ? "true" : "false") << "\n";
    return out.str();
}

DistributionSpec parse_distribution_arg(const std::string& arg) {
    const auto colon = arg.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("distribution spec needs kind:args, got '" + arg + "'");
    DistributionSpec spec;
    spec.kind = trim(arg.substr(0, colon));
    const auto cells = split(arg.substr(colon + 1), ',');
    if (spec.kind == "jr") spec.kind = "jackson_rogers";
    if (spec.kind == "regular") {
        if (cells.size() != 1)
            throw std::invalid_argument("regular distribution needs one degree");
        spec.d = parse_int(cells[0], "d");
    } else if (spec.kind == "two_degree") {
        if (cells.size() != 3)
            throw std::invalid_argument("two_degree distribution needs d_l,d_u,q");
        spec.d_l = parse_int(cells[0], "d_l");
        spec.d_u = parse_int(cells[1], "d_u");
        spec.q = parse_real(cells[2], "q");
    } else if (spec.kind == "jackson_rogers") {
        if (cells.size() != 2 && cells.size() != 3)
            throw std::invalid_argument("jackson_rogers distribution needs m,r[,d_max]");
        spec.m = parse_real(cells[0], "m");
        spec.r = parse_real(cells[1], "r");
        if (cells.size() == 3) spec.d_max = parse_int(cells[2], "d_max");
    } else if (spec.kind == "pmf") {
        spec.file = trim(arg.substr(colon + 1));
        if (spec.file.empty()) throw std::invalid_argument("pmf distribution needs a file");
    } else {
        throw std::invalid_argument("unknown distribution kind '" + spec.kind + "'");
    }
    return spec;
}

DegreeDistribution build_distribution(const DistributionSpec& spec) {
    if (spec.kind == "regular") return make_regular(spec.d);
    if (spec.kind == "two_degree") return make_two_degree(spec.d_l, spec.d_u, spec.q);
    if (spec.kind == "jackson_rogers") return make_jackson_rogers(spec.m, spec.r, spec.d_max);
    if (spec.kind == "pmf") {
        std::ifstream in(spec.file);
        if (!in) throw std::invalid_argument("cannot open distribution file '" + spec.file + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return distribution_from_csv(buf.str());
    }
    throw std::invalid_argument("unknown distribution kind '" + spec.kind + "'");
}

GameParams build_params(const ExperimentConfig& cfg) {
    return GameParams(cfg.a0h, cfg.a1h, cfg.a0l, cfg.a1l, cfg.p);
}

PricingPolicy build_policy(const ExperimentConfig& cfg) {
    PricingPolicy pol{cfg.p0, cfg.p1, cfg.eta, cfg.cap, !cfg.uninformed};
    pol.validate();
    return pol;
}

}  // namespace netadopt::cli
