#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "e8cm/claims.hpp"
#include "e8cm/standard_basis.hpp"

using namespace e8cm;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void emit(const ojson& j) { std::cout << j.dump() << '\n'; }

Vec parse_list(const std::string& text) {
    Vec out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            long long v = std::stoll(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::logic_error&) {
            throw UsageError("not an integer list: '" + text + "'");
        }
    }
    return out;
}

ojson read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return ojson::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

GramLattice read_gram(const std::string& path) {
    auto j = read_json_file(path);
    if (!j.contains("gram")) throw UsageError(path + ": missing \"gram\"");
    auto rows = j["gram"].get<std::vector<Vec>>();
    if (j.contains("rank") && j["rank"].get<std::size_t>() != rows.size()) throw UsageError(path + ": rank does not match gram");
    for (auto& r : rows)
        if (r.size() != rows.size()) throw UsageError(path + ": gram is not square");
    return GramLattice::from_rows(rows);
}

e8::Coords to_coords(const Vec& v) {
    if (v.size() != 8) throw UsageError("s* needs 8 entries");
    e8::Coords c{};
    std::copy(v.begin(), v.end(), c.begin());
    return c;
}

Tau read_tau(const std::string& path) {
    auto j = read_json_file(path);
    if (!j.contains("s_star") || !j.contains("sigma")) throw UsageError(path + ": expected {\"s_star\": [8], \"sigma\": [...]}");
    return Tau::from_dual(to_coords(j["s_star"].get<Vec>()), j["sigma"].get<Vec>());
}

// --tau FILE or --s-star/--sigma
struct TauArgs {
    std::string file, s_star, sigma;

    void attach(CLI::App* cmd) {
        cmd->add_option("--tau", file, "Tau JSON file {\"s_star\":[8],\"sigma\":[...]}");
        cmd->add_option("--s-star", s_star, "dual coordinates, comma separated");
        cmd->add_option("--sigma", sigma, "tail, comma separated (\"\" for none)");
    }
    Tau get(CLI::App* cmd) const {
        const bool inline_given = cmd->count("--s-star") > 0;
        if (!file.empty() && inline_given) throw UsageError("give either --tau or --s-star, not both");
        if (!file.empty()) return read_tau(file);
        if (!inline_given) throw UsageError("missing --tau or --s-star");
        return Tau::from_dual(to_coords(parse_list(s_star)), parse_list(sigma));
    }
};

ojson tau_json(const Tau& t) {
    return ojson{{"s_star", Vec(t.s_star().begin(), t.s_star().end())}, {"sigma", t.sigma}, {"norm", t.norm}};
}

ojson gram_json(const Matrix& g) { return ojson{{"rank", g.rows()}, {"gram", g.to_rows()}}; }

ojson shape_json(const LinearShape& s) {
    ojson out = ojson::array();
    for (auto [p, q] : s) out.push_back({p, q});
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"E8-changemaker lattices: enumeration, complements, recognition and claim replay"};
    app.require_subcommand(1);
    app.fallthrough();
    unsigned jobs = 1;
    app.add_option("--jobs", jobs, "worker threads for enumeration and claims (output does not depend on it)")
        ->check(CLI::Range(1u, 256u));

    auto* roots = app.add_subcommand("roots", "E8 positive roots and Hasse edges");
    std::string root_format = "json";
    roots->add_option("--format", root_format)->check(CLI::IsMember({"json", "tsv"}));

    auto* is_cm = app.add_subcommand("is-changemaker", "is sigma a changemaker vector");
    std::string cm_sigma;
    is_cm->add_option("--sigma", cm_sigma)->required();

    auto* is_e8 = app.add_subcommand("is-e8cm", "is (s*, sigma) an E8-changemaker");
    TauArgs e8_tau;
    e8_tau.attach(is_e8);

    auto* complement = app.add_subcommand("complement", "Gram matrix and basis of the orthogonal complement of tau");
    TauArgs comp_tau;
    comp_tau.attach(complement);

    auto* recognize = app.add_subcommand("recognize", "decompose a Gram matrix into linear lattices");
    std::string gram_file;
    recognize->add_option("--gram", gram_file, "Gram JSON file {\"rank\":n,\"gram\":[[...]]}")->required();

    auto* enumerate = app.add_subcommand("enumerate", "E8-changemakers as JSON lines");
    int enum_n = -1;
    std::string enum_sigma;
    Int norm_cap = 2000;
    std::size_t limit = 0;
    enumerate->add_option("--n", enum_n, "tail length minus one")->check(CLI::Range(-1, 7));
    enumerate->add_option("--sigma", enum_sigma, "restrict to one tail");
    enumerate->add_option("--norm-cap", norm_cap, "bound on |tau|, 0 for none")->capture_default_str()->check(CLI::NonNegativeNumber);
    enumerate->add_option("--limit", limit, "stop after this many, 0 for none");

    auto* basis = app.add_subcommand("basis", "standard basis of the complement with its checks");
    TauArgs basis_tau;
    basis_tau.attach(basis);
    bool cumulative = false;
    basis->add_flag("--cumulative-w4", cumulative, "evaluate loaded w4 steps on the running vector");

    auto* knot = app.add_subcommand("knot", "p, genus, torsion coefficients and Alexander polynomial");
    TauArgs knot_tau;
    knot_tau.attach(knot);

    auto* family = app.add_subcommand("family", "rows of the surgery families");
    std::string fam_name;
    int fam_j = 0;
    bool fam_verify = false, fam_list = false;
    family->add_option("--name", fam_name);
    family->add_option("--j", fam_j);
    family->add_flag("--verify", fam_verify, "check the row embeds as Lambda(p, -k^2 mod p)");
    family->add_flag("--list", fam_list, "list family names");

    auto* congruence = app.add_subcommand("congruence", "solutions of x^2 = +-rhs mod p");
    Int cong_p = 0, cong_rhs = 0;
    congruence->add_option("--p", cong_p)->required();
    congruence->add_option("--rhs", cong_rhs)->required();

    auto* verify = app.add_subcommand("verify", "replay registered claims");
    std::string claim_id = "all";
    bool no_timing = false, list_claims = false;
    verify->add_option("claim", claim_id, "claim id or 'all'");
    verify->add_flag("--no-timing", no_timing, "omit millis so the output is reproducible byte for byte");
    verify->add_flag("--list", list_claims, "list claim ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*roots) {
            const auto& pos = e8::positive_roots();
            auto edges = e8::hasse_edges();
            if (root_format == "tsv") {
                std::cout << "index\tc1\tc2\tc3\tc4\tc5\tc6\tc7\tc8\n";
                for (auto& r : pos) {
                    std::cout << r.index;
                    for (Int c : r.coords) std::cout << '\t' << c;
                    std::cout << '\n';
                }
                std::cout << "\nlower\tupper\n";
                for (auto [a, b] : edges) std::cout << a << '\t' << b << '\n';
            } else {
                ojson rs = ojson::array();
                for (auto& r : pos) rs.push_back({{"index", r.index}, {"coords", Vec(r.coords.begin(), r.coords.end())}});
                emit({{"count", e8::roots().size()}, {"positive", rs}, {"hasse_edges", edges}});
            }
        } else if (*is_cm) {
            emit({{"changemaker", is_changemaker(parse_list(cm_sigma))}});
        } else if (*is_e8) {
            emit({{"e8_changemaker", is_e8_changemaker(e8_tau.get(is_e8))}});
        } else if (*complement) {
            Tau t = comp_tau.get(complement);
            auto c = orthogonal_complement(ambient_lattice(t.sigma.size()), t.ambient());
            ojson out = gram_json(c.lattice.gram());
            out["basis"] = c.basis;
            out["discriminant"] = discriminant(c.lattice);
            out["tau"] = tau_json(t);
            emit(out);
        } else if (*recognize) {
            auto shape = recognize_linear(read_gram(gram_file));
            if (shape)
                emit({{"summands", shape_json(*shape)}});
            else
                emit("not-linear");
        } else if (*enumerate) {
            EnumerationOptions o;
            o.jobs = jobs;
            if (enumerate->count("--sigma")) {
                o.sigma = parse_list(enum_sigma);
                if (static_cast<int>(o.sigma->size()) != enum_n + 1 && enumerate->count("--n"))
                    throw UsageError("--sigma length does not match --n");
                enum_n = static_cast<int>(o.sigma->size()) - 1;
            }
            if (norm_cap > 0) o.norm_cap = norm_cap;
            if (limit > 0) o.limit = limit;
            std::vector<Tau> found;
            try {
                found = enumerate_e8_changemakers(enum_n, o);
            } catch (const PartialResultError& e) {
                if (!o.limit) throw;
                found = e.partial;
                std::cerr << "note: stopped at --limit " << limit << '\n';
            }
            for (auto& t : found) emit(tau_json(t));
        } else if (*basis) {
            Tau t = basis_tau.get(basis);
            const W4Rule rule = cumulative ? W4Rule::cumulative : W4Rule::literal;
            auto sb = standard_basis(t, rule);
            ojson vs = ojson::array();
            for (auto& b : sb.all()) {
                ojson e{{"name", b.name}, {"coords", b.coords}, {"shape", shape_name(b.shape)}, {"loaded", b.loaded}};
                if (!b.gappy_indices.empty()) e["gappy_indices"] = b.gappy_indices;
                vs.push_back(e);
            }
            auto rep = verify_standard_basis(t, rule);
            emit({{"tau", tau_json(t)},
                  {"w4_rule", w4_rule_name(rule)},
                  {"basis", vs},
                  {"checks",
                   {{"pass", rep.pass},
                    {"failures", rep.failures},
                    {"tight_v", rep.tight_v},
                    {"tight_w", rep.tight_w},
                    {"loaded", rep.loaded},
                    {"gappy", rep.gappy}}}});
            return rep.pass ? 0 : 1;
        } else if (*knot) {
            auto k = knot_invariants(knot_tau.get(knot));
            emit({{"p", k.p}, {"genus", k.genus}, {"torsion", k.torsion}, {"alexander", k.alexander}});
        } else if (*family) {
            if (fam_list) {
                ojson names = ojson::array();
                for (auto& f : tange_families()) names.push_back({{"name", f.name}, {"group", f.group}, {"j_min", f.j_min}});
                emit(names);
                return 0;
            }
            if (fam_name.empty() || !family->count("--j")) throw UsageError("family needs --name and --j (or --list)");
            auto r = tange_family(fam_name, fam_j);
            ojson out{{"family", r.family}, {"j", r.j},       {"p", r.p},
                      {"k", r.k},           {"q", r.q},       {"s_star", Vec(r.s_star.begin(), r.s_star.end())},
                      {"sigma", r.sigma}};
            if (fam_verify) {
                auto c = verify_family_row(r);
                out["verified"] = c.pass;
                if (!c.pass) out["failure"] = {{"stage", c.stage}, {"detail", c.detail}};
                if (c.recognized) out["recognized"] = shape_json(*c.recognized);
                emit(out);
                return c.pass ? 0 : 1;
            }
            emit(out);
        } else if (*congruence) {
            emit({{"solutions", solve_quadratic_congruence(cong_p, cong_rhs)}});
        } else if (*verify) {
            if (list_claims) {
                for (auto& c : claims()) emit({{"claim", c.id}, {"description", c.description}});
                return 0;
            }
            std::vector<const Claim*> todo;
            if (claim_id == "all") {
                for (auto& c : claims()) todo.push_back(&c);
            } else if (auto* c = find_claim(claim_id)) {
                todo.push_back(c);
            } else {
                throw UsageError("unknown claim '" + claim_id + "' (see verify --list)");
            }
            bool all_pass = true;
            for (auto* c : todo) {
                auto r = run_claim(*c, jobs);
                all_pass = all_pass && r.pass;
                emit(report_json(r, !no_timing));
                std::cout.flush();
            }
            return all_pass ? 0 : 1;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: bad JSON input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
