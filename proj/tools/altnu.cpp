#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "altnu/boxcomplex.hpp"
#include "altnu/complex.hpp"
#include "altnu/error.hpp"
#include "altnu/lattice.hpp"
#include "altnu/shelling.hpp"
#include "altnu/sweep.hpp"
#include "altnu/table1.hpp"

using namespace altnu;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

struct Config {
    std::string nu, delta = "tamari", format, mode = "refined", lattice_file;
    std::size_t max_elements = 20000;
    int max_north = 0, max_run = 3;
    bool rational = false, rearrange = false, slow = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<IncrementVector> deltas_for(const NEPath& nu, const std::string& arg) {
    if (arg == "all") return all_deltas(nu);
    if (arg == "tamari") return {IncrementVector(nu.runs.begin() + 1, nu.runs.end())};
    if (arg == "dyck") return {IncrementVector(nu.n(), 0)};
    IncrementVector d = parse_vector(arg);
    validate_delta(nu, d);
    return {d};
}

NEPath nu_of(const Config& cfg) {
    if (cfg.nu.empty()) throw UsageError("--nu is required");
    return parse_path(cfg.nu);
}

ShellingMode mode_of(const Config& cfg) {
    if (cfg.mode == "plain") return ShellingMode::Plain;
    if (cfg.mode == "refined") return ShellingMode::Refined;
    throw UsageError("--mode must be plain or refined");
}

json box_json(Box b) { return json::array({b.r, b.c}); }

json boxes_json(const std::vector<Box>& bs) {
    json j = json::array();
    for (Box b : bs) j.push_back(box_json(b));
    return j;
}

std::string box_name(Box b) { return "(" + std::to_string(b.r) + "," + std::to_string(b.c) + ")"; }

json nodes_json(const DeltaNuTree& t) {
    json j = json::array();
    for (Point p : t.nodes) j.push_back(json::array({p.x, p.y}));
    return j;
}

// ---- lattice ----------------------------------------------------------------

std::string lattice_output(const Config& cfg, const NEPath& nu, const IncrementVector& d, bool& ok) {
    const AltTamari at = build_alt_tamari(nu, d, cfg.max_elements);
    const FiniteLattice& L = at.lattice;
    const Shape& sh = at.region.shape();
    const auto covers = L.covers();
    std::vector<int> lambda(covers.size());
    for (std::size_t k = 0; k < covers.size(); ++k) {
        lambda[k] = lambda_jsd(L, covers[k].first, covers[k].second);
        ok = ok && at.ji_box[L.ji_index(lambda[k])] == at.cover_box[k];
    }
    if (cfg.format == "dot") {
        std::vector<std::string> names, labels;
        for (int i = 0; i < L.size(); ++i) names.push_back(std::to_string(i));
        for (int b : at.cover_box) labels.push_back(box_name(sh.box(b)));
        return lattice_to_dot(L, names, labels);
    }
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "lower,upper,label_row,label_col,lambda\n";
        for (std::size_t k = 0; k < covers.size(); ++k) {
            const Box b = sh.box(at.cover_box[k]);
            os << covers[k].first << ',' << covers[k].second << ',' << b.r << ',' << b.c << ',' << lambda[k] << '\n';
        }
        return os.str();
    }
    if (cfg.format == "ascii") {
        std::ostringstream os;
        os << "nu=" << to_string(nu.runs) << " delta=" << to_string(d) << ": " << L.size() << " elements, "
           << covers.size() << " covers, " << L.join_irreducibles().size() << " join-irreducibles\n"
           << render_ascii(sh);
        return os.str();
    }
    json j;
    j["schema"] = 1;
    j["nu"] = nu.runs;
    j["delta"] = d;
    j["shape"] = sh.u;
    j["size"] = L.size();
    j["bottom"] = L.bottom();
    j["top"] = L.top();
    j["elements"] = json::array();
    for (int i = 0; i < L.size(); ++i)
        j["elements"].push_back({{"id", i}, {"nodes", nodes_json(at.trees[i])}, {"join_irreducible", L.ji_index(i) >= 0}});
    j["covers"] = json::array();
    for (std::size_t k = 0; k < covers.size(); ++k)
        j["covers"].push_back({{"lower", covers[k].first},
                               {"upper", covers[k].second},
                               {"label", box_json(sh.box(at.cover_box[k]))},
                               {"lambda", lambda[k]}});
    j["perspective_equals_lambda"] = ok;
    return j.dump() + "\n";
}

// ---- complex ----------------------------------------------------------------

std::string complex_output(const Config& cfg, const NEPath& nu, const IncrementVector& d, bool& ok) {
    const AltTamari at = build_alt_tamari(nu, d, cfg.max_elements);
    const FiniteLattice& L = at.lattice;
    const Shape& sh = at.region.shape();
    const SimplicialComplex cx = box_complex(sh);

    // tau on every canonical join representation, theta back
    json cert = json::array();
    bool iso = true;
    std::set<std::vector<Box>> images;
    for (int a = 0; a < L.size(); ++a) {
        const auto rep = canonical_join_rep(L, a);
        const auto boxes = tau(at, rep);
        iso = iso && cx.contains(face_of(boxes, sh)) && theta(sh, boxes) == at.trees[a];
        images.insert(boxes);
        cert.push_back({{"element", a}, {"canonical_join", rep}, {"boxes", boxes_json(boxes)}});
    }
    iso = iso && images.size() == cx.face_count() && images.size() == static_cast<std::size_t>(L.size());

    const auto fv = f_vector(cx);
    const auto gf2 = betti_gf2(cx);
    const ShellingOrder so = shelling_order(sh, mode_of(cfg), cfg.rearrange);
    const auto shell = betti_via_shelling(so);
    std::vector<std::int64_t> rat;
    if (cfg.rational) rat = betti_rational(cx);
    ok = ok && iso && gf2 == shell && (!cfg.rational || rat == gf2);

    if (cfg.format == "csv") return shelling_to_csv(so, sh);
    if (cfg.format == "dot") {
        std::ostringstream os;
        os << "graph box_complex {\n";
        for (int v = 0; v < sh.box_count(); ++v) os << "  \"" << box_name(sh.box(v)) << "\";\n";
        for (Face f : cx.facets()) {
            const auto vs = face_vertices(f);
            for (std::size_t i = 0; i < vs.size(); ++i)
                for (std::size_t k = i + 1; k < vs.size(); ++k)
                    os << "  \"" << box_name(sh.box(vs[i])) << "\" -- \"" << box_name(sh.box(vs[k])) << "\";\n";
        }
        os << "}\n";
        return os.str();
    }
    if (cfg.format == "ascii") {
        std::ostringstream os;
        os << "nu=" << to_string(nu.runs) << " delta=" << to_string(d) << "\n" << render_ascii(sh);
        os << "f-vector " << to_string(std::vector<int>(fv.begin(), fv.end())) << ", chi " << euler(cx) << "\n";
        os << "betti gf2 " << to_string(std::vector<int>(gf2.begin(), gf2.end())) << ", shelling "
           << to_string(std::vector<int>(shell.begin(), shell.end()));
        if (cfg.rational) os << ", rational " << to_string(std::vector<int>(rat.begin(), rat.end()));
        os << "\nisomorphism " << (iso ? "verified" : "FAILED") << "\n";
        return os.str();
    }
    json j;
    j["schema"] = 1;
    j["nu"] = nu.runs;
    j["delta"] = d;
    j["shape"] = sh.u;
    json bc;
    bc["boxes"] = json::array();
    for (int v = 0; v < sh.box_count(); ++v) bc["boxes"].push_back(box_json(sh.box(v)));
    bc["facets"] = json::array();
    for (Face f : cx.facets()) bc["facets"].push_back(boxes_json(boxes_of(f, sh)));
    j["box_complex"] = bc;
    json cj;
    cj["vertices"] = L.join_irreducibles();
    cj["facets"] = json::array();
    for (Face f : canonical_join_complex(L).facets()) {
        json fj = json::array();
        for (int v : face_vertices(f)) fj.push_back(L.join_irreducibles()[v]);
        cj["facets"].push_back(fj);
    }
    j["canonical_join_complex"] = cj;
    j["f_vector"] = fv;
    j["euler_characteristic"] = euler(cx);
    j["betti"] = {{"gf2", gf2}, {"shelling", shell}};
    if (cfg.rational) j["betti"]["rational"] = rat;
    j["isomorphism"] = {{"verified", iso}, {"tau", cert}};
    j["shelling"] = json::parse(shelling_to_json(so, sh));
    return j.dump() + "\n";
}

// ---- table1 -------------------------------------------------------------------

// Computed Betti vectors may be kept across runs in $ALTNU_CACHE_DIR.
class Table1Cache {
public:
    Table1Cache() {
        if (const char* dir = std::getenv("ALTNU_CACHE_DIR"); dir && *dir) {
            path_ = std::filesystem::path(dir) / "table1.json";
            std::ifstream in(path_);
            if (in) {
                try {
                    data_ = json::parse(in);
                } catch (const json::exception&) {
                    data_ = json::object();
                }
            }
        }
    }
    bool enabled() const { return !path_.empty(); }
    bool lookup(Table1Result& r) const {
        const auto it = data_.find(key(r));
        if (it == data_.end()) return false;
        r.gf2 = (*it)["gf2"].get<std::vector<std::int64_t>>();
        r.shelling = (*it)["shelling"].get<std::vector<std::int64_t>>();
        return true;
    }
    void store(const Table1Result& r) { data_[key(r)] = {{"gf2", r.gf2}, {"shelling", r.shelling}}; }
    void save() const {
        if (!enabled()) return;
        std::filesystem::create_directories(path_.parent_path());
        std::ofstream(path_) << data_.dump(1) << '\n';
    }

private:
    static std::string key(const Table1Result& r) {
        return std::to_string(r.m) + "," + std::to_string(r.n) + "," + (r.tamari ? "tamari" : "dyck");
    }
    std::filesystem::path path_;
    json data_ = json::object();
};

int cmd_table1(const Config& cfg) {
    Table1Options opt;
    opt.max_elements = cfg.max_elements;
    opt.slow = cfg.slow;
    Table1Cache cache;
    std::vector<Table1Result> rows;
    for (const Table1Row& row : table1_golden())
        for (bool tamari : {true, false}) {
            Table1Result r;
            r.m = row.m;
            r.n = row.n;
            r.tamari = tamari;
            if (cache.enabled() && cache.lookup(r)) {
                Table1Options skip = opt;
                skip.max_elements = 0;  // only fill in the metadata
                skip.slow = false;
                Table1Result meta = compute_table1_row(row, tamari, skip);
                meta.skipped = false;
                meta.gf2 = r.gf2;
                meta.shelling = r.shelling;
                rows.push_back(meta);
                continue;
            }
            rows.push_back(compute_table1_row(row, tamari, opt));
            if (!rows.back().skipped) cache.store(rows.back());
        }
    cache.save();
    bool ok = true;
    for (const auto& r : rows) ok = ok && r.ok();
    if (cfg.format == "json") {
        json j;
        j["schema"] = 1;
        j["rows"] = json::array();
        for (const auto& r : rows)
            j["rows"].push_back({{"m", r.m},
                                 {"n", r.n},
                                 {"lattice", r.tamari ? "tamari" : "dyck"},
                                 {"elements", r.elements},
                                 {"golden", r.golden},
                                 {"gf2", r.gf2},
                                 {"shelling", r.shelling},
                                 {"status", r.skipped ? "skipped" : r.ok() ? "ok" : "mismatch"}});
        j["ok"] = ok;
        std::cout << j.dump() << '\n';
    } else {
        std::cout << table1_to_csv(rows);
    }
    for (const auto& r : rows)
        if (!r.ok())
            std::cerr << "mismatch at m=" << r.m << " n=" << r.n << " (" << (r.tamari ? "tamari" : "dyck") << ")\n";
    return ok ? kOk : kFailed;
}

// ---- verify -------------------------------------------------------------------

struct Report {
    json checks = json::array();
    bool ok = true;
    void add(const std::string& name, const std::string& where, bool pass, const std::string& detail = "") {
        ok = ok && pass;
        checks.push_back({{"check", name}, {"where", where}, {"ok", pass}, {"detail", detail}});
    }
    void skip(const std::string& name, const std::string& where, const std::string& why) {
        checks.push_back({{"check", name}, {"where", where}, {"ok", nullptr}, {"detail", "skipped: " + why}});
    }
    void print(const std::string& format) const {
        if (format == "json") {
            std::cout << json{{"schema", 1}, {"ok", ok}, {"checks", checks}}.dump() << '\n';
            return;
        }
        for (const auto& c : checks) {
            const std::string status = c["ok"].is_null() ? "SKIP" : c["ok"].get<bool>() ? "PASS" : "FAIL";
            std::cout << status << ' ' << c["check"].get<std::string>() << ' ' << c["where"].get<std::string>();
            if (!c["detail"].get<std::string>().empty()) std::cout << " -- " << c["detail"].get<std::string>();
            std::cout << '\n';
        }
        std::cout << (ok ? "all checks passed" : "verification FAILED") << '\n';
    }
};

void verify_file(const Config& cfg, Report& rep) {
    std::ifstream in(cfg.lattice_file);
    if (!in) throw UsageError("cannot read " + cfg.lattice_file);
    json j;
    try {
        j = json::parse(in);
        const NEPath nu(j.at("nu").get<std::vector<int>>());
        const auto d = j.at("delta").get<IncrementVector>();
        validate_delta(nu, d);
        std::vector<DeltaNuTree> trees;
        for (const auto& e : j.at("elements")) {
            DeltaNuTree t;
            for (const auto& p : e.at("nodes")) t.nodes.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
            std::sort(t.nodes.begin(), t.nodes.end());
            trees.push_back(std::move(t));
        }
        std::vector<std::pair<int, int>> covers;
        for (const auto& c : j.at("covers")) covers.emplace_back(c.at("lower").get<int>(), c.at("upper").get<int>());
        const auto r = verify_cover_set(nu, d, trees, covers, cfg.max_elements);
        rep.add("cover-set", cfg.lattice_file, r.ok,
                r.ok ? std::to_string(r.elements) + " elements, " + std::to_string(r.faces) + " faces" : r.message);
    } catch (const json::exception& e) {
        throw UsageError(std::string("malformed lattice file: ") + e.what());
    }
}

void verify_sweep(const Config& cfg, Report& rep) {
    SweepOptions o;
    o.max_north = cfg.max_north;
    o.max_run = cfg.max_run;
    const SweepReport r = run_sweep(o);
    const std::string where = "n<=" + std::to_string(cfg.max_north) + " runs<=" + std::to_string(cfg.max_run);
    auto detail = [&](std::size_t failures) { return std::to_string(failures) + " failures"; };
    rep.add("isomorphism", where, r.iso_failures == 0,
            std::to_string(r.lattices) + " lattices, " + std::to_string(r.elements) + " elements; " + detail(r.iso_failures));
    rep.add("lambda", where, r.lambda_failures == 0, detail(r.lambda_failures));
    rep.add("euler", where, r.euler_failures == 0, detail(r.euler_failures));
    rep.add("narayana", where, r.narayana_failures == 0, detail(r.narayana_failures));
    rep.add("f-vector-invariance", where, r.fvector_failures == 0, detail(r.fvector_failures));
    rep.add("homology", where, r.homology_failures == 0,
            std::to_string(r.shapes) + " shapes; " + detail(r.homology_failures));
    for (const auto& m : r.messages) rep.add("message", where, false, m);
}

std::set<std::vector<int>> top_homology_sequences(const Shape& sh, const ShellingOrder& so) {
    int top = 0;
    for (Face f : so.facets) top = std::max(top, face_size(f));
    std::set<std::vector<int>> out;
    for (int j : homology_facets(so))
        if (face_size(so.facets[j]) == top) out.insert(a_sequence(so.facets[j], sh));
    return out;
}

void verify_pair(const Config& cfg, const NEPath& nu, const IncrementVector& d, Report& rep) {
    const std::string where = "nu=" + to_string(nu.runs) + " delta=" + to_string(d);
    const Shape sh = shape_from(nu, d);
    const SimplicialComplex cx = box_complex(sh);

    const LatticeCheck lc = check_lattice(nu, d);
    rep.add("isomorphism", where, lc.iso_ok, lc.iso_ok ? std::to_string(lc.elements) + " elements" : lc.message);
    rep.add("lambda", where, lc.lambda_ok, lc.lambda_ok ? "" : lc.message);
    const AltTamari at = build_alt_tamari(nu, d, cfg.max_elements);
    const auto cs = verify_cover_set(nu, d, at.trees, at.lattice.covers(), cfg.max_elements);
    rep.add("cover-set", where, cs.ok, cs.message);

    auto order = vertex_insertion_order(sh);
    std::reverse(order.begin(), order.end());
    const VDResult vd = is_vertex_decomposable(cx, order);
    std::string why;
    const bool replay = vd.decomposable && replay_certificate(*vd.certificate, &why);
    rep.add("vertex-decomposable", where, replay, vd.decomposable ? why : "no certificate found");

    try {
        const ShellingOrder so = shelling_order(sh, mode_of(cfg), cfg.rearrange);
        rep.add("shelling", where, is_valid_shelling(so.facets), std::to_string(so.facets.size()) + " facets");
        const auto gf2 = betti_gf2(cx), shell = betti_via_shelling(so);
        rep.add("betti", where, gf2 == shell,
                "gf2 " + to_string(std::vector<int>(gf2.begin(), gf2.end())) + " shelling " +
                    to_string(std::vector<int>(shell.begin(), shell.end())));
        if (cfg.rational) rep.add("betti-rational", where, betti_rational(cx) == gf2);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::ValidationFailed) throw;
        rep.add("shelling", where, false, e.what());
    }

    const auto nar = narayana_polynomial(nu);
    const std::int64_t chi = euler(cx), expect = 1 - evaluate(nar, -1);
    rep.add("euler", where, chi == expect, "chi " + std::to_string(chi) + ", 1 - Nar(-1) = " + std::to_string(expect));
    if (IncrementVector(nu.runs.begin() + 1, nu.runs.end()) == d) {
        auto f = f_vector(cx);  // f_i counts faces of size i + 1
        std::vector<std::int64_t> coeff(nar.begin() + (nar.empty() ? 0 : 1), nar.end());
        f.resize(std::max(f.size(), coeff.size()), 0);
        coeff.resize(f.size(), 0);
        rep.add("narayana", where, f == coeff);
    }

    bool wide = nu.n() >= 2;
    for (int i = 1; i < nu.n(); ++i) wide = wide && nu.runs[i] >= 2;
    if (!wide) {
        rep.skip("phi", where, "needs nu_i >= 2 for 0 < i < n");
    } else {
        const Shape base = shape_from(nu, IncrementVector(nu.n(), 0));
        const bool same = top_homology_sequences(base, shelling_order(base)) ==
                          top_homology_sequences(sh, shelling_order(sh));
        rep.add("phi", where, same, "top homology facets match delta = 0 through a-sequences");
    }
    bool full = nu.runs[0] == 0 && nu.n() >= 2;
    for (int i = 1; i <= nu.n(); ++i) full = full && nu.runs[i] >= 2;
    if (!full) {
        rep.skip("top-spheres", where, "needs nu_0 = 0 and nu_i >= 2");
    } else if (std::all_of(d.begin(), d.end(), [](int v) { return v == 0; })) {
        const auto so = shelling_order(sh);
        std::set<Face> hom, image;
        for (int j : homology_facets(so))
            if (face_size(so.facets[j]) == nu.n() - 1) hom.insert(so.facets[j]);
        const auto paths = enumerate_nu_dyck(shrunken_path(nu));
        for (const auto& p : paths) image.insert(h_map(p, nu));
        rep.add("top-spheres", where, image == hom && image.size() == paths.size(),
                std::to_string(hom.size()) + " top homology facets, " + std::to_string(paths.size()) + " paths");
    }
}

int cmd_verify(const Config& cfg) {
    Report rep;
    if (!cfg.lattice_file.empty()) {
        verify_file(cfg, rep);
    } else if (cfg.max_north > 0) {
        verify_sweep(cfg, rep);
    } else {
        const NEPath nu = nu_of(cfg);
        for (const auto& d : deltas_for(nu, cfg.delta)) verify_pair(cfg, nu, d, rep);
    }
    rep.print(cfg.format);
    return rep.ok ? kOk : kFailed;
}

int per_delta(const Config& cfg, std::string (*out)(const Config&, const NEPath&, const IncrementVector&, bool&)) {
    const NEPath nu = nu_of(cfg);
    const auto ds = deltas_for(nu, cfg.delta);
    bool ok = true;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ds.size() > 1 && cfg.format == "csv") std::cout << "# delta=" << to_string(ds[i]) << '\n';
        if (i > 0 && cfg.format == "ascii") std::cout << '\n';
        std::cout << out(cfg, nu, ds[i], ok);
    }
    return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"alt nu-Tamari lattices, canonical join complexes and box complexes"};
    app.require_subcommand(1);
    Config cfg;
    const std::vector<std::string> formats{"json", "csv", "dot", "ascii"};

    auto common = [&](CLI::App* sub) {
        sub->add_option("--nu", cfg.nu, "path: east runs (nu_0,...,nu_n) or a N/E step string");
        sub->add_option("--delta", cfg.delta, "increment vector, or tamari, dyck, all")->capture_default_str();
        sub->add_option("--max-elements", cfg.max_elements, "lattice size cap")->capture_default_str();
    };
    auto* lattice = app.add_subcommand("lattice", "the alt nu-Tamari lattice with rotation and lambda labels");
    common(lattice);
    lattice->add_option("--format", cfg.format)->check(CLI::IsMember(formats));

    auto* complex = app.add_subcommand("complex", "box complex, canonical join complex, isomorphism, homology");
    common(complex);
    complex->add_option("--format", cfg.format)->check(CLI::IsMember(formats));
    complex->add_option("--mode", cfg.mode, "shelling: refined or plain")->check(CLI::IsMember({"refined", "plain"}));
    complex->add_flag("--rational", cfg.rational, "also compute rational Betti numbers");
    complex->add_flag("--rearrange", cfg.rearrange, "larger facets first in the shelling");

    auto* table = app.add_subcommand("table1", "Betti numbers for (NE^m)^n against the published table");
    table->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));
    table->add_option("--max-elements", cfg.max_elements)->capture_default_str();
    table->add_flag("--slow", cfg.slow, "lift the element cap");

    auto* verify = app.add_subcommand("verify", "run the invariant battery");
    common(verify);
    verify->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "ascii"}));
    verify->add_option("--mode", cfg.mode)->check(CLI::IsMember({"refined", "plain"}));
    verify->add_flag("--rational", cfg.rational);
    verify->add_flag("--rearrange", cfg.rearrange);
    verify->add_option("--lattice", cfg.lattice_file, "certify a lattice file written by `lattice --format json`");
    verify->add_option("--max-north", cfg.max_north, "sweep every nu with up to this many north steps");
    verify->add_option("--max-run", cfg.max_run, "largest east run in the sweep")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }
    try {
        if (*lattice) {
            if (cfg.format.empty()) cfg.format = "json";
            return per_delta(cfg, lattice_output);
        }
        if (*complex) {
            if (cfg.format.empty()) cfg.format = "json";
            return per_delta(cfg, complex_output);
        }
        if (*table) {
            if (cfg.format.empty()) cfg.format = "csv";
            return cmd_table1(cfg);
        }
        if (cfg.format.empty()) cfg.format = "ascii";
        return cmd_verify(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
