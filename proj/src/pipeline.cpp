#include "abg/pipeline.hpp"

#include "abg/cochain.hpp"
#include "abg/error.hpp"
#include "abg/geometry.hpp"
#include "abg/homology.hpp"
#include "abg/intersection.hpp"
#include "abg/neighborhood.hpp"
#include "abg/orientation.hpp"
#include "abg/parallel.hpp"
#include "abg/pseudomanifold.hpp"
#include "abg/quotient.hpp"
#include "abg/scx.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <memory>

namespace abg {

using nlohmann::json;

const std::vector<std::string>& check_registry()
{
    static const std::vector<std::string> names = {
        "build",          "fullness",    "dual-split",       "boundary-eq", "nbhd-cover", "x-direct-eq",
        "pseudomanifold", "links",       "orientation",      "double-cover-iso",
        "euler",          "cocycle-h1",  "mod2-degree",      "homology",
    };
    return names;
}

std::vector<std::string> default_checks(int k)
{
    std::vector<std::string> out;
    for (const auto& name : check_registry()) {
        if (k >= 2 && (name == "cocycle-h1" || name == "mod2-degree" || name == "homology"))
            continue;
        out.push_back(name);
    }
    return out;
}

std::vector<std::string> parse_checks(std::string_view list, int k)
{
    if (list == "all")
        return check_registry();
    if (list == "default" || list.empty())
        return default_checks(k);
    std::vector<std::string> picked;
    std::size_t p = 0;
    while (p <= list.size()) {
        const auto comma = list.find(',', p);
        const std::string name(list.substr(p, comma == std::string_view::npos ? std::string_view::npos : comma - p));
        const auto& reg = check_registry();
        if (std::find(reg.begin(), reg.end(), name) == reg.end())
            fail(ErrorCode::InvalidInput, "unknown check '" + name + "'");
        if (std::find(picked.begin(), picked.end(), name) == picked.end())
            picked.push_back(name);
        if (comma == std::string_view::npos)
            break;
        p = comma + 1;
    }
    std::vector<std::string> ordered;
    for (const auto& name : check_registry())
        if (std::find(picked.begin(), picked.end(), name) != picked.end())
            ordered.push_back(name);
    return ordered;
}

std::string canonical_json(const json& value)
{
    return value.dump(2) + "\n";
}

json without_timings(json report)
{
    report.erase("timings");
    return report;
}

std::string sha256_hex(std::string_view data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        fail(ErrorCode::IoError, "SHA-256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

namespace {

json to_json(const std::vector<std::size_t>& v)
{
    json a = json::array();
    for (auto x : v)
        a.push_back(x);
    return a;
}

json to_json(const HomologyDescriptor& h)
{
    json torsion = json::array();
    for (const auto& t : h.torsion)
        torsion.push_back(t.get_str());
    return {{"degree", h.degree}, {"betti", h.betti}, {"torsion", torsion}, {"group", h.to_string()}};
}

json complex_summary(const SimplicialComplex& c)
{
    return {{"vertices", c.num_vertices()},
            {"dimension", c.dimension()},
            {"f_vector", to_json(c.f_vector())},
            {"euler", euler_characteristic(c)},
            {"cell_coefficients", c.has_offsets()}};
}

ConstructionParams with_group(ConstructionParams p, GroupKind g)
{
    p.group = g;
    return p;
}

/// Lazily built objects shared by the checks.
class Context {
public:
    explicit Context(const RunConfig& config) : config_(config), params_(config.params) {}

    const ConstructionParams& params() const { return params_; }
    bool is_cover() const { return params_.group == GroupKind::Ghat; }

    const SimplicialComplex& quotient()
    {
        if (!quotient_)
            quotient_ = triangulate_quotient(params_);
        return *quotient_;
    }

    const SimplicialComplex& cover_quotient()
    {
        if (is_cover())
            return quotient();
        if (!cover_quotient_)
            cover_quotient_ = triangulate_quotient(with_group(params_, GroupKind::Ghat));
        return *cover_quotient_;
    }

    NeighborhoodPair& pair()
    {
        if (!pair_) {
            if (released_)
                fail(ErrorCode::InvalidInput, "neighborhoods were already released");
            const auto& cover = cover_quotient();
            const auto cover_params = with_group(params_, GroupKind::Ghat);
            pair_ = std::make_unique<NeighborhoodPair>(
                build_neighborhoods(cover, params_, skeleton_subcomplex(cover, cover_params, Skeleton::Z),
                                    skeleton_subcomplex(cover, cover_params, Skeleton::Zprime)));
        }
        return *pair_;
    }

    bool has_pair() const { return pair_ != nullptr; }

    void release_pair()
    {
        if (!pair_)
            return;
        if (!boundary_)
            boundary_ = common_boundary(*pair_);
        x_cover();
        pair_.reset();
        boundary_.reset();
        released_ = true;
    }

    const Subcomplex& boundary()
    {
        if (!boundary_)
            boundary_ = common_boundary(pair());
        return *boundary_;
    }

    const SimplicialComplex& x_cover()
    {
        if (!x_cover_)
            x_cover_ = boundary().to_complex();
        return *x_cover_;
    }

    const Fold& fold()
    {
        if (!fold_)
            fold_ = fold_to_G(x_cover(), params_);
        return *fold_;
    }

    const SimplicialComplex& constructed_x() { return is_cover() ? x_cover() : fold().base; }

    const SimplicialComplex& x()
    {
        if (!x_) {
            if (config_.input_x) {
                const std::string text = read_file(*config_.input_x);
                input_digest_ = sha256_hex(text);
                x_ = parse_scx(text, QuotientChart(LatticeGroup(params_)));
            } else {
                x_ = constructed_x();
            }
        }
        return *x_;
    }

    const std::optional<std::string>& input_digest() const { return input_digest_; }
    bool has_x() const { return x_.has_value() || x_cover_.has_value(); }
    const std::optional<SimplicialComplex>& quotient_if_built() const { return quotient_; }
    const std::optional<SimplicialComplex>& x_if_built() const { return x_; }
    const std::optional<SimplicialComplex>& x_cover_if_built() const { return x_cover_; }

private:
    const RunConfig& config_;
    ConstructionParams params_;
    std::optional<SimplicialComplex> quotient_, cover_quotient_;
    std::unique_ptr<NeighborhoodPair> pair_;
    bool released_ = false;
    std::optional<Subcomplex> boundary_;
    std::optional<SimplicialComplex> x_cover_, x_;
    std::optional<Fold> fold_;
    std::optional<std::string> input_digest_;
};

struct Outcome {
    bool pass = false;
    json payload = json::object();
    std::string diagnostic;
};

bool needs_neighborhoods(const std::vector<std::string>& checks)
{
    for (const auto& c : checks)
        if (c != "build" && c != "fullness" && c != "dual-split" && c != "euler")
            return true;
    return false;
}

Outcome check_build(Context& ctx, bool with_neighborhoods)
{
    Outcome o;
    const auto& q = ctx.quotient();
    const LatticeGroup group(ctx.params());
    const Rational volume = total_volume(q);
    const auto geometry = validate_geometry(q);
    o.payload["quotient"] = complex_summary(q);
    o.payload["quotient"]["top_cells"] = q.maximal(q.ambient_dim()).size();
    o.payload["volume_equals_covolume"] = volume == group.covolume();
    o.payload["geometry"] = {{"ok", geometry.ok}, {"sampled", geometry.sampled}, {"message", geometry.message}};
    o.pass = volume == group.covolume() && geometry.ok;
    if (with_neighborhoods) {
        const auto& pair = ctx.pair();
        o.payload["cover_subdivided_top_cells"] = pair.subdivision.complex.maximal(pair.subdivision.complex.ambient_dim()).size();
        o.payload["x"] = complex_summary(ctx.constructed_x());
        if (!ctx.is_cover())
            o.payload["x_cover"] = complex_summary(ctx.x_cover());
    }
    return o;
}

Outcome check_fullness(Context& ctx)
{
    Outcome o;
    const auto& q = ctx.quotient();
    const bool z = skeleton_full_on_lifts(q, ctx.params(), Skeleton::Z);
    const bool zp = skeleton_full_on_lifts(q, ctx.params(), Skeleton::Zprime);
    o.payload = {{"z", z}, {"zprime", zp}};
    o.pass = z && zp;
    if (ctx.is_cover()) {
        const auto zs = skeleton_subcomplex(q, ctx.params(), Skeleton::Z);
        const auto zps = skeleton_subcomplex(q, ctx.params(), Skeleton::Zprime);
        const bool fz = is_full_subcomplex(q, zs), fzp = is_full_subcomplex(q, zps);
        o.payload["z_subcomplex"] = {{"full", fz}, {"f_vector", to_json(zs.f_vector())}};
        o.payload["zprime_subcomplex"] = {{"full", fzp}, {"f_vector", to_json(zps.f_vector())}};
        o.pass = o.pass && fz && fzp;
    }
    return o;
}

Outcome check_dual_split(Context& ctx)
{
    Outcome o;
    o.pass = verify_dual_split(ctx.quotient(), ctx.params());
    o.payload = {{"split", o.pass}};
    return o;
}

Outcome check_boundary_eq(Context& ctx)
{
    Outcome o;
    const auto& b = ctx.boundary();
    o.payload = {{"boundary_f_vector", to_json(b.f_vector())}};
    o.pass = true;
    return o;
}

Outcome check_nbhd_cover(Context& ctx)
{
    Outcome o;
    const auto& pair = ctx.pair();
    const bool cover = neighborhoods_cover(pair);
    const bool meet = neighborhoods_meet_in(pair, ctx.boundary());
    o.payload = {{"union_is_everything", cover}, {"intersection_is_boundary", meet},
                 {"n_z_top_cells", pair.n_z.generators(pair.n_z.dimension()).size()},
                 {"n_zprime_top_cells", pair.n_zprime.generators(pair.n_zprime.dimension()).size()}};
    o.pass = cover && meet;
    return o;
}

Outcome check_x_direct(Context& ctx)
{
    Outcome o;
    std::optional<SimplicialComplex> direct;
    if (ctx.is_cover()) {
        direct = direct_X(ctx.pair().subdivision, ctx.params());
    } else {
        ctx.release_pair();
        direct = direct_X(barycentric_subdivision(ctx.quotient()), ctx.params());
    }
    o.pass = *direct == ctx.constructed_x();
    o.payload = {{"equal", o.pass}, {"direct_f_vector", to_json(direct->f_vector())}};
    return o;
}

Outcome check_pseudomanifold(Context& ctx)
{
    Outcome o;
    const auto& x = ctx.x();
    const auto r = verify_closed_pseudomanifold(x, 2 * ctx.params().k);
    o.payload = {{"pure", r.pure}, {"ridges_ok", r.ridges_ok}, {"bad_ridges", r.bad_ridges}, {"components", r.components}};
    o.pass = r.ok && r.components == 1;
    o.diagnostic = r.message;
    return o;
}

Outcome check_links(Context& ctx)
{
    Outcome o;
    const auto& x = ctx.x();
    const int d = 2 * ctx.params().k;
    const auto sample = sample_vertices(x, ctx.params().k == 1 ? x.num_vertices() : 50);
    const auto r = vertex_link_homology_check(x, d, sample);
    std::size_t bad = 0;
    json failures = json::array();
    for (const auto& e : r.entries)
        if (!e.ok) {
            ++bad;
            if (failures.size() < 10)
                failures.push_back({{"vertex", e.vertex}, {"note", e.note}});
        }
    o.payload = {{"sampled", sample.size()}, {"failed", bad}, {"failures", failures}};
    o.pass = r.ok;
    return o;
}

Outcome check_orientation(Context& ctx)
{
    Outcome o;
    const auto r = orientation_character(ctx.x());
    std::size_t reversing = 0;
    for (const auto& c : r.character)
        reversing += c.second < 0;
    const bool expected = ctx.is_cover();
    o.payload = {{"orientable", r.orientable}, {"expected_orientable", expected},
                 {"non_tree_ridges", r.character.size()}, {"reversing_ridges", reversing}};
    o.pass = r.orientable == expected;
    return o;
}

Outcome check_double_cover(Context& ctx)
{
    Outcome o;
    if (ctx.is_cover()) {
        o.payload = {{"reason", "the cover group already gives the orientable hypersurface"}};
        return o;
    }
    const auto& x = ctx.x();
    const auto& fold = ctx.fold();
    if (!(x == fold.base)) {
        o.diagnostic = "input hypersurface differs from the constructed one";
        return o;
    }
    const auto cover = orientation_double_cover(x);
    const auto orient = orientation_character(cover.complex);
    const bool iso = matches_double_cover(ctx.x_cover(), fold.vertex_map, x, cover);
    o.payload = {{"cover", complex_summary(cover.complex)}, {"cover_orientable", orient.orientable},
                 {"cover_components", orient.components}, {"isomorphic_to_cover_hypersurface", iso}};
    o.pass = iso && orient.orientable;
    return o;
}

Outcome check_euler(Context& ctx, bool with_x)
{
    Outcome o;
    o.payload = euler_oracle(ctx.params());
    const long oracle = o.payload["oracle_euler"].get<long>();
    const long expected = ctx.is_cover() ? 2 * oracle : oracle;
    o.payload["expected_x_euler"] = expected;
    o.pass = o.payload["oracle_matches_closed_form"].get<bool>();
    if (with_x) {
        const long chi = euler_characteristic(ctx.x());
        o.payload["x_euler"] = chi;
        o.pass = o.pass && chi == expected;
    }
    return o;
}

Outcome check_cocycles(Context& ctx)
{
    Outcome o;
    const auto& x = ctx.x();
    o.pass = true;
    json axes = json::array();
    for (int axis = 1; axis <= 2 * ctx.params().k; ++axis) {
        const auto c = coordinate_cocycle(x, ctx.params(), axis);
        const bool nonzero = cohomology_class_is_nonzero(c);
        json entry = {{"axis", axis}, {"nonzero", nonzero}};
        o.pass = o.pass && nonzero;
        if (!ctx.is_cover()) {
            const auto up = pullback(ctx.x_cover(), ctx.fold().vertex_map, c);
            const bool up_nonzero = cohomology_class_is_nonzero(up);
            entry["pullback_nonzero"] = up_nonzero;
            o.pass = o.pass && up_nonzero;
        }
        axes.push_back(entry);
    }
    o.payload = {{"axes", axes}};
    return o;
}

Outcome check_mod2(Context& ctx)
{
    Outcome o;
    const auto& p = ctx.params();
    const int n = p.ambient_dim();
    const RationalVector origin(static_cast<std::size_t>(n));
    const RationalVector across = LatticeGroup(with_group(p, GroupKind::G)).last_generator();
    RationalVector loop(static_cast<std::size_t>(n));
    loop[0] = p.L;
    const auto a = mod2_segment_intersection(ctx.x(), p, {origin, across});
    const auto b = mod2_segment_intersection(ctx.x(), p, {origin, loop});
    auto entry = [](const IntersectionResult& r, int expected) {
        return json{{"parity", r.parity}, {"crossings", r.crossings}, {"perturbation", r.perturbation},
                    {"expected", expected}};
    };
    o.payload = {{"across", entry(a, 1)}, {"loop_in_neighborhood", entry(b, 0)}};
    o.pass = a.parity == 1 && b.parity == 0;
    return o;
}

Outcome check_homology(Context& ctx, int max_dim)
{
    Outcome o;
    const auto& x = ctx.x();
    const int dim = x.dimension();
    const int top = max_dim < 0 ? dim : std::min(max_dim, dim);
    const auto hz = homology_up_to(x, top, Ring::Z);
    const auto h2 = homology_up_to(x, top, Ring::Z2);
    json zs = json::array(), z2 = json::array();
    for (const auto& h : hz)
        zs.push_back(to_json(h));
    for (const auto& h : h2)
        z2.push_back(h.betti);
    o.payload = {{"integral", zs}, {"mod2_betti", z2}};
    o.pass = true;
    if (top == dim) {
        long alt = 0;
        for (const auto& h : hz)
            alt += (h.degree % 2 == 0 ? 1 : -1) * h.betti;
        const bool ep = alt == euler_characteristic(x);
        bool pd = true;
        for (int d = 0; d <= dim; ++d)
            pd = pd && h2[static_cast<std::size_t>(d)].betti == h2[static_cast<std::size_t>(dim - d)].betti;
        o.payload["euler_poincare"] = ep;
        o.payload["mod2_duality"] = pd;
        o.pass = ep && pd;
    }
    return o;
}

} // namespace

json euler_oracle(const ConstructionParams& params)
{
    const ConstructionParams cover = with_group(params, GroupKind::Ghat);
    json counts = json::array(), closed = json::array(), printed = json::array();
    bool matches = true, agrees = true;
    long chi = 0, printed_chi = 0;
    for (int i = 0; i <= params.k; ++i) {
        const auto c = cubical_cell_count(cover, i);
        const auto f = cubical_cell_formula(cover, i);
        const auto p = printed_cell_formula(cover, i);
        counts.push_back(c);
        closed.push_back(f);
        printed.push_back(p);
        matches = matches && c == f;
        agrees = agrees && c == p;
        const long sign = i % 2 == 0 ? 1 : -1;
        chi += sign * static_cast<long>(c);
        printed_chi += sign * static_cast<long>(p);
    }
    return {{"k", params.k},
            {"L", params.L},
            {"oracle_counts", counts},
            {"closed_form_counts", closed},
            {"printed_formula_counts", printed},
            {"oracle_matches_closed_form", matches},
            {"printed_formula_agrees", agrees},
            {"oracle_euler", chi},
            {"printed_formula_euler", printed_chi}};
}

Report run_pipeline(const RunConfig& config)
{
    config.params.validate();
    if (config.threads)
        set_thread_count(*config.threads);
    Context ctx(config);
    json checks = json::object(), timings = json::object();
    bool all = true;
    const bool neighborhoods = needs_neighborhoods(config.checks);
    std::map<std::string, std::function<Outcome()>> runners = {
        {"build", [&] { return check_build(ctx, neighborhoods); }},
        {"fullness", [&] { return check_fullness(ctx); }},
        {"dual-split", [&] { return check_dual_split(ctx); }},
        {"boundary-eq", [&] { return check_boundary_eq(ctx); }},
        {"nbhd-cover", [&] { return check_nbhd_cover(ctx); }},
        {"x-direct-eq", [&] { return check_x_direct(ctx); }},
        {"pseudomanifold", [&] { return check_pseudomanifold(ctx); }},
        {"links", [&] { return check_links(ctx); }},
        {"orientation", [&] { return check_orientation(ctx); }},
        {"double-cover-iso", [&] { return check_double_cover(ctx); }},
        {"euler", [&] { return check_euler(ctx, neighborhoods || config.input_x.has_value()); }},
        {"cocycle-h1", [&] { return check_cocycles(ctx); }},
        {"mod2-degree", [&] { return check_mod2(ctx); }},
        {"homology", [&] { return check_homology(ctx, config.homology_max_dim); }},
    };
    for (const auto& name : check_registry()) {
        if (std::find(config.checks.begin(), config.checks.end(), name) == config.checks.end())
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome outcome;
        std::string status;
        try {
            outcome = runners.at(name)();
            const bool skipped = name == "double-cover-iso" && ctx.is_cover();
            status = skipped ? "skipped" : (outcome.pass ? "pass" : "fail");
        } catch (const Error& e) {
            if (e.code() == ErrorCode::IoError)
                throw;
            status = "fail";
            outcome.diagnostic = e.what();
        }
        if (status == "fail")
            all = false;
        json entry = {{"status", status}, {"payload", outcome.payload}};
        if (!outcome.diagnostic.empty())
            entry["diagnostic"] = outcome.diagnostic;
        checks[name] = entry;
        timings[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    json artifacts = json::object();
    if (config.output_dir) {
        std::filesystem::create_directories(*config.output_dir);
        auto emit = [&](const std::string& file, const SimplicialComplex& c) {
            const std::string text = write_scx(c);
            write_file(*config.output_dir / file, text);
            artifacts[file] = sha256_hex(text);
        };
        if (ctx.quotient_if_built() && !ctx.quotient_if_built()->has_offsets())
            emit("quotient.scx", *ctx.quotient_if_built());
        if (ctx.has_x() && !config.input_x) {
            emit("x.scx", ctx.x());
            if (!ctx.is_cover() && ctx.x_cover_if_built())
                emit("x_cover.scx", *ctx.x_cover_if_built());
        }
    }

    json config_echo = {{"k", config.params.k},
                        {"L", config.params.L},
                        {"group", to_string(config.params.group)},
                        {"checks", config.checks},
                        {"homology_max_dim", config.homology_max_dim}};
    Report report;
    report.passed = all;
    report.body = {{"tool", {{"name", "abg"}, {"version", std::string(tool_version)}}},
                   {"config", config_echo},
                   {"checks", checks},
                   {"artifacts", artifacts},
                   {"inputs", ctx.input_digest() ? json{{"x", *ctx.input_digest()}} : json::object()},
                   {"passed", all},
                   {"timings", timings}};
    if (config.output_dir)
        write_file(*config.output_dir / "report.json", canonical_json(report.body));
    return report;
}

} // namespace abg
