// Command-line front end. Subcommands map 1:1 onto library operations; every
// command is deterministic given its inputs, flags, and --seed, and all
// parallelism is opt-in via --threads (default 1).
//
// Exit codes: 0 ok, 2 usage or file errors, 3 shape/transform mismatch,
// 4 numerical failure.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ltensor/ltensor.hpp"
#include "ltensor/oracle.hpp"

using json = nlohmann::json;
using namespace ltensor;

namespace {

constexpr Index kElementGuard = Index{1} << 26;

Shape parse_shape(const std::string& text) {
    Shape shape;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(text.substr(pos), &used);
        } catch (const std::exception&) {
            throw Error("bad shape '" + text + "'");
        }
        if (v < 1) throw Error("shape entries must be >= 1, got " + std::to_string(v));
        shape.push_back(static_cast<Index>(v));
        pos += used;
        if (pos < text.size()) {
            if (text[pos] != ',') throw Error("bad shape '" + text + "'");
            ++pos;
        }
    }
    if (shape.size() < 2) throw Error("shape needs at least 2 axes, got '" + text + "'");
    return shape;
}

std::vector<Index> parse_ranks(const std::string& text, Index max_rank, Index slices) {
    if (text == "full") return std::vector<Index>(static_cast<std::size_t>(slices), max_rank);
    std::vector<Index> ranks;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(text.substr(pos), &used);
        } catch (const std::exception&) {
            throw Error("bad rank list '" + text + "'");
        }
        ranks.push_back(static_cast<Index>(v));
        pos += used;
        if (pos < text.size()) {
            if (text[pos] != ',') throw Error("bad rank list '" + text + "'");
            ++pos;
        }
    }
    if (ranks.empty()) throw Error("empty rank list");
    if (ranks.size() == 1) ranks.assign(static_cast<std::size_t>(slices), ranks[0]);
    if (static_cast<Index>(ranks.size()) != slices)
        throw Error("rank list has " + std::to_string(ranks.size()) + " entries for " +
                    std::to_string(slices) + " slices");
    return ranks;
}

void check_guard(const std::string& what, Index elements, bool force) {
    if (elements > kElementGuard && !force)
        throw Error(what + " has " + std::to_string(elements) +
                    " elements, above the 2^26 guard; pass --force to proceed");
}

Tensor load(const std::string& path, bool force) {
    Tensor t = read_ptns(path);
    check_guard(path, t.size(), force);
    return t;
}

json shape_json(const Shape& shape) {
    json arr = json::array();
    for (Index n : shape) arr.push_back(n);
    return arr;
}

json tube_json(const Tensor& t) {
    json arr = json::array();
    for (Index i = 0; i < t.size(); ++i) arr.push_back(json::array({t[i].real(), t[i].imag()}));
    return arr;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

struct CommonOpts {
    std::string transform = "dft";
    int threads = 1;
    bool force = false;
};

Transform transform_for(const CommonOpts& opts, const Tensor& a) {
    return parse_transform_spec(opts.transform, a.trailing_shape());
}

void add_common(CLI::App* sub, CommonOpts& opts, bool with_transform = true) {
    if (with_transform)
        sub->add_option("--transform", opts.transform,
                        "transform spec: identity|dft|dft-unitary|dct|random-unitary:<seed>|"
                        "random:<seed>|file:<sidecar.json>")
            ->capture_default_str();
    sub->add_option("--threads", opts.threads, "slice-parallel thread cap")->capture_default_str();
    sub->add_flag("--force", opts.force, "bypass the 2^26 element guard");
}

// Subcommand callbacks run inside App::parse, so the thread cap has to be
// applied at dispatch time, not after parse returns.
template <class Fn>
auto dispatch(const CommonOpts& opts, Fn fn) {
    return [&opts, fn] {
        set_max_threads(opts.threads);
        fn();
    };
}

void run_product(const std::string& pa, const std::string& pb, const std::string& out,
                 const CommonOpts& opts) {
    const Tensor a = load(pa, opts.force);
    const Tensor b = load(pb, opts.force);
    const Transform L = transform_for(opts, a);
    L.check_matches(b);
    const Tensor c = t_product(a, b, L);
    write_ptns(out, c);
    emit({{"output", out}, {"shape", shape_json(c.shape())}, {"transform", L.name()}});
}

void run_tsvd(const std::string& pa, const std::string& prefix, const CommonOpts& opts) {
    const Tensor a = load(pa, opts.force);
    const Transform L = transform_for(opts, a);
    const TsvdFactors f = tsvd(a, L);
    write_ptns(prefix + ".U.ptns", f.u);
    write_ptns(prefix + ".S.ptns", f.s);
    write_ptns(prefix + ".V.ptns", f.v);

    const SingularSpectrum spec = singular_spectrum(a, L);
    const MultiRank mr = multi_rank(spec, default_rank_tol(a.rows(), a.cols()));
    json ranks = json::array();
    for (Index r : mr.ranks) ranks.push_back(r);
    json head = json::array();
    for (std::size_t i = 0; i < spec.global.size() && i < 10; ++i)
        head.push_back(spec.global[i].value);
    emit({{"input", pa},
          {"shape", shape_json(a.shape())},
          {"transform", L.name()},
          {"factors", json::array({prefix + ".U.ptns", prefix + ".S.ptns", prefix + ".V.ptns"})},
          {"multi_rank", ranks},
          {"multirank_l1", mr.l1},
          {"spectrum_head", head}});
}

void run_truncate(const std::string& pa, const std::string& rank_text, const std::string& out,
                  const CommonOpts& opts) {
    const Tensor a = load(pa, opts.force);
    const Transform L = transform_for(opts, a);
    const Index k = std::min(a.rows(), a.cols());
    const std::vector<Index> ranks = parse_ranks(rank_text, k, a.slice_count());
    const Tensor t = truncate(tsvd(a, L), ranks);
    write_ptns(out, t);
    emit({{"output", out}, {"shape", shape_json(t.shape())}, {"transform", L.name()}});
}

void run_rank(const std::string& pa, double tol, const CommonOpts& opts) {
    const Tensor a = load(pa, opts.force);
    const Transform L = transform_for(opts, a);
    const MultiRank mr = multi_rank(a, L, tol);
    json ranks = json::array();
    for (Index r : mr.ranks) ranks.push_back(r);
    emit({{"input", pa},
          {"transform", L.name()},
          {"multi_rank", ranks},
          {"multirank_l1", mr.l1},
          {"multirank_l2", mr.l2},
          {"tubal_rank", tubal_rank(a, L, tol)}});
}

void run_norms(const std::string& pa, const CommonOpts& opts) {
    const Tensor a = load(pa, opts.force);
    const Transform L = transform_for(opts, a);
    const SingularSpectrum spec = singular_spectrum(a, L);
    emit({{"input", pa},
          {"transform", L.name()},
          {"nuclear", nuclear_norm(spec)},
          {"spectral", spectral_norm(spec)},
          {"frobenius", frobenius(a)},
          {"multirank_l1", multirank_l1(a, L)},
          {"multirank_l2", multirank_l2(a, L)},
          {"unitary_transform", spec.unitary_transform}});
}

void run_det(const std::string& pa, const CommonOpts& opts) {
    const Tensor a = load(pa, opts.force);
    const Transform L = transform_for(opts, a);
    const Tube d = det_fast(a, L);
    emit({{"input", pa},
          {"transform", L.name()},
          {"n", a.rows()},
          {"tube", tube_json(d.tensor())},
          {"tube_transform_domain", tube_json(L.forward(d.tensor()))}});
}

void run_inverse(const std::string& pa, const std::string& out, const CommonOpts& opts) {
    const Tensor a = load(pa, opts.force);
    const Transform L = transform_for(opts, a);
    const Tensor inv = inverse_tensor(a, L);
    write_ptns(out, inv);
    emit({{"output", out}, {"shape", shape_json(inv.shape())}, {"transform", L.name()}});
}

void run_transpose(const std::string& pa, const std::string& out, const CommonOpts& opts) {
    const Tensor a = load(pa, opts.force);
    const Transform L = transform_for(opts, a);
    const Tensor t = conj_transpose(a, L);
    write_ptns(out, t);
    emit({{"output", out}, {"shape", shape_json(t.shape())}, {"transform", L.name()}});
}

void run_verify(const std::string& pa, const std::string& pb, const CommonOpts& opts) {
    const Tensor a = load(pa, opts.force);
    json out{{"input", pa}};

    const auto kind = a.order() == 3 ? oracle::Kind::third_order : oracle::Kind::p_order;
    const auto rep = oracle::verify_block_diagonalization(a, kind);
    out["off_block_max"] = rep.off_block_max;
    out["block_vs_slice_rel"] = rep.block_vs_slice_rel;
    out["block_diag_pass"] = rep.off_block_max <= 1e-10 && rep.block_vs_slice_rel <= 1e-9;

    if (!pb.empty()) {
        const Tensor b = load(pb, opts.force);
        const Transform L = Transform::dft(a.trailing_shape());
        L.check_matches(b);
        const double rel = rel_error(t_product(a, b, L), oracle::t_product_classic(a, b));
        out["classic_rel"] = rel;
        out["classic_pass"] = rel <= 1e-10;
    }
    emit(out);
}

void run_envelope(const std::string& pa, Index samples, std::uint64_t seed, const CommonOpts& opts) {
    const Tensor y = load(pa, opts.force);
    const Transform L = transform_for(opts, y);
    const auto cj = envelope::conjugate(y, L);
    const auto bi = envelope::biconjugate(y, L);
    const auto lb = envelope::lower_bound_check(y, L, samples, seed);
    json bij{{"infinite", bi.is_infinite}};
    if (!bi.is_infinite) bij["value"] = bi.value;
    emit({{"input", pa},
          {"transform", L.name()},
          {"conjugate", cj.value},
          {"active_count", cj.active_count},
          {"biconjugate", bij},
          {"spectral", spectral_norm(cj.spectrum)},
          {"nuclear", nuclear_norm(cj.spectrum)},
          {"samples", lb.samples},
          {"max_violation", lb.max_violation},
          {"maximizer_gap", lb.maximizer_gap}});
}

void run_gen(const std::string& shape_text, const std::string& rank_text, std::uint64_t seed,
             bool real, const std::string& out, const CommonOpts& opts) {
    const Shape shape = parse_shape(shape_text);
    Index elements = 1;
    for (Index n : shape) elements *= n;
    check_guard("shape " + shape_text, elements, opts.force);

    Tensor t;
    if (rank_text.empty()) {
        t = random_tensor(shape, seed, real);
    } else {
        if (real) throw Error("--real cannot be combined with --multirank");
        Index slices = 1;
        for (std::size_t i = 2; i < shape.size(); ++i) slices *= shape[i];
        Shape trailing(shape.begin() + 2, shape.end());
        const Transform L = parse_transform_spec(opts.transform, trailing);
        const Index k = std::min(shape[0], shape[1]);
        t = random_multirank_tensor(shape, parse_ranks(rank_text, k, slices), L, seed);
    }
    write_ptns(out, t, real);
    emit({{"output", out}, {"shape", shape_json(t.shape())}, {"seed", seed}});
}

void run_bench(const std::string& shape_text, const std::vector<std::string>& transforms,
               std::uint64_t seed, const CommonOpts& opts) {
    const Shape shape = parse_shape(shape_text);
    Index elements = 1;
    for (Index n : shape) elements *= n;
    check_guard("shape " + shape_text, elements, opts.force);
    const Tensor a = random_tensor(shape, seed);
    const Tensor b = random_tensor(shape, derive_seed(seed, 1));

    std::cout << "subop,shape,transform,wall_ns,checksum\n";
    char checksum[64];
    for (const std::string& spec : transforms) {
        const Transform L = parse_transform_spec(spec, a.trailing_shape());
        {
            const auto start = std::chrono::steady_clock::now();
            const Tensor c = t_product(a, b, L);
            const auto ns =
                std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
            std::snprintf(checksum, sizeof checksum, "%.17g", frobenius(c));
            std::cout << "product," << shape_text << "," << spec << "," << ns.count() << ","
                      << checksum << "\n";
        }
        {
            const auto start = std::chrono::steady_clock::now();
            const TsvdFactors f = tsvd(a, L);
            const auto ns =
                std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
            std::snprintf(checksum, sizeof checksum, "%.17g", frobenius(f.s));
            std::cout << "tsvd," << shape_text << "," << spec << "," << ns.count() << ","
                      << checksum << "\n";
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transform-domain tensor algebra toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string in_a, in_b, out, rank_text = "full", shape_text;
    std::vector<std::string> bench_transforms{"dft", "dct"};
    double tol = -1.0;
    std::uint64_t seed = 0;
    Index samples = 200;
    bool real = false;

    auto* product = app.add_subcommand("product", "tensor product of two PTNS files");
    product->add_option("a", in_a)->required();
    product->add_option("b", in_b)->required();
    product->add_option("-o,--output", out)->required();
    add_common(product, opts);
    product->callback(dispatch(opts, [&] { run_product(in_a, in_b, out, opts); }));

    auto* tsvd_cmd = app.add_subcommand("tsvd", "factor A = U * S * V^H, write factors + summary");
    tsvd_cmd->add_option("a", in_a)->required();
    tsvd_cmd->add_option("-o,--output", out, "prefix for <prefix>.{U,S,V}.ptns")->required();
    add_common(tsvd_cmd, opts);
    tsvd_cmd->callback(dispatch(opts, [&] { run_tsvd(in_a, out, opts); }));

    auto* trunc = app.add_subcommand("truncate", "low-rank approximation via the tensor SVD");
    trunc->add_option("a", in_a)->required();
    trunc->add_option("--rank", rank_text, "'full', one rank, or per-slice list r1,r2,...")
        ->capture_default_str();
    trunc->add_option("-o,--output", out)->required();
    add_common(trunc, opts);
    trunc->callback(dispatch(opts, [&] { run_truncate(in_a, rank_text, out, opts); }));

    auto* rank = app.add_subcommand("rank", "multi-rank and tubal rank");
    rank->add_option("a", in_a)->required();
    rank->add_option("--tol", tol, "relative rank tolerance (default max(n1,n2)*eps)");
    add_common(rank, opts);
    rank->callback(dispatch(opts, [&] { run_rank(in_a, tol, opts); }));

    auto* norms = app.add_subcommand("norms", "nuclear/spectral/frobenius norms");
    norms->add_option("a", in_a)->required();
    add_common(norms, opts);
    norms->callback(dispatch(opts, [&] { run_norms(in_a, opts); }));

    auto* det = app.add_subcommand("det", "determinant tube");
    det->add_option("a", in_a)->required();
    add_common(det, opts);
    det->callback(dispatch(opts, [&] { run_det(in_a, opts); }));

    auto* inv = app.add_subcommand("inverse", "tensor inverse");
    inv->add_option("a", in_a)->required();
    inv->add_option("-o,--output", out)->required();
    add_common(inv, opts);
    inv->callback(dispatch(opts, [&] { run_inverse(in_a, out, opts); }));

    auto* tr = app.add_subcommand("transpose", "conjugate transpose");
    tr->add_option("a", in_a)->required();
    tr->add_option("-o,--output", out)->required();
    add_common(tr, opts);
    tr->callback(dispatch(opts, [&] { run_transpose(in_a, out, opts); }));

    auto* verify = app.add_subcommand(
        "verify", "cross-check against the block-circulant reference implementation");
    verify->add_option("a", in_a)->required();
    verify->add_option("b", in_b, "optional second tensor for the order-3 product check");
    add_common(verify, opts, false);
    verify->callback(dispatch(opts, [&] { run_verify(in_a, in_b, opts); }));

    auto* env = app.add_subcommand("envelope-check", "conjugate/biconjugate values + sampling check");
    env->add_option("y", in_a)->required();
    env->add_option("--samples", samples)->capture_default_str();
    env->add_option("--seed", seed)->capture_default_str();
    add_common(env, opts);
    env->callback(dispatch(opts, [&] { run_envelope(in_a, samples, seed, opts); }));

    auto* bench = app.add_subcommand("bench", "time product/tsvd, emit CSV");
    bench->add_option("--shape", shape_text)->required();
    bench->add_option("--transforms", bench_transforms)->delimiter(',')->capture_default_str();
    bench->add_option("--seed", seed)->capture_default_str();
    add_common(bench, opts, false);
    bench->callback(dispatch(opts, [&] { run_bench(shape_text, bench_transforms, seed, opts); }));

    auto* gen = app.add_subcommand("gen", "synthesize a test tensor");
    gen->add_option("--shape", shape_text)->required();
    gen->add_option("--multirank", rank_text, "prescribed per-slice ranks (under --transform)");
    gen->add_option("--seed", seed)->capture_default_str();
    gen->add_flag("--real", real, "draw real entries, write the real encoding");
    gen->add_option("-o,--output", out)->required();
    add_common(gen, opts);
    gen->callback(dispatch(opts, [&] {
        run_gen(shape_text, gen->count("--multirank") ? rank_text : "", seed, real, out, opts);
    }));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const TransformError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
