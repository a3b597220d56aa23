// Copyright 2026 The hcb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hcb/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>

#include "CLI11.hpp"
#include "hcb/descent.hpp"
#include "hcb/error.hpp"
#include "hcb/flip_analysis.hpp"
#include "hcb/haagerup.hpp"
#include "hcb/io.hpp"
#include "hcb/witness.hpp"

#ifndef HCB_VERSION
#define HCB_VERSION "0.0.0"
#endif

namespace hcb {

std::string_view version() { return HCB_VERSION; }

namespace {

using io::json;

struct CommonOptions {
    double tolerance = kDefaultTolerance;
    std::uint64_t seed = 0;
    int trials = 20;
    std::size_t level = 2;
};

void add_common(CLI::App *cmd, CommonOptions &o) {
    cmd->add_option("--tolerance", o.tolerance, "Solver tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_option("--trials", o.trials, "Number of random trials")->check(CLI::NonNegativeNumber);
    cmd->add_option("--level", o.level, "Matrix level n")->check(CLI::PositiveNumber);
}

json header(std::string_view command, const CommonOptions &o) {
    json j;
    j["tool"] = "hcb";
    j["version"] = std::string(version());
    j["command"] = std::string(command);
    j["seed"] = o.seed;
    j["tolerance"] = o.tolerance;
    return j;
}

// Values within tolerance of the certified number; relative above 1.
bool pinned(double value, double target, double tol) {
    return std::abs(value - target) <= tol * std::max(1.0, std::abs(target));
}

int cmd_gen(const CommonOptions &o, const std::string &profile_text, const std::string &output, std::ostream &out) {
    const json profile = io::parse(profile_text, "--profile");
    if (!profile.is_array() || profile.size() != 2 || !profile[0].is_array() || !profile[1].is_array()) {
        throw InputError("--profile must be [[fiber sizes of mu1], [fiber sizes of mu2]]");
    }
    const std::size_t nx = profile[0].size();
    if (nx == 0 || profile[1].size() != nx) {
        throw InputError("--profile: both maps need one fiber size per base point");
    }
    std::mt19937_64 rng(o.seed);
    std::vector<std::string> xs;
    for (std::size_t x = 0; x < nx; ++x) {
        xs.push_back("x" + std::to_string(x));
    }
    auto base = make_space(xs);
    auto draw = [&](const json &sizes, const char *prefix) {
        std::vector<std::size_t> targets;
        for (std::size_t x = 0; x < nx; ++x) {
            if (!sizes[x].is_number_integer() || sizes[x].get<long long>() <= 0) {
                throw InputError("--profile: fiber sizes must be positive integers");
            }
            targets.insert(targets.end(), sizes[x].get<std::size_t>(), x);
        }
        for (std::size_t i = targets.size() - 1; i > 0; --i) {
            std::swap(targets[i], targets[rng() % (i + 1)]);
        }
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            labels.push_back(prefix + std::to_string(i));
        }
        return SpaceMap(make_space(labels), base, std::move(targets));
    };
    SpaceMap m1 = draw(profile[0], "a");
    SpaceMap m2 = draw(profile[1], "b");
    json j = io::to_json(io::Instance{m1, m2});
    json gen;
    gen["tool"] = "hcb";
    gen["version"] = std::string(version());
    gen["seed"] = o.seed;
    gen["profile"] = profile;
    j["generator"] = std::move(gen);
    const std::string text = j.dump(2) + "\n";
    if (!output.empty()) {
        std::ofstream f(output);
        if (!f) {
            throw InputError("cannot write " + output);
        }
        f << text;
    }
    out << text;
    return 0;
}

json fiber_report(const HaagerupResult &r, const FiniteSpace &base) {
    json per = json::object();
    for (const auto &f : r.per_fiber) {
        json e;
        e["p"] = f.p;
        e["q"] = f.q;
        e["value"] = f.result.value;
        e["lower_bound"] = f.result.lower_bound;
        e["upper_bound"] = f.result.upper_bound;
        e["status"] = std::string(to_string(f.result.status));
        e["iterations"] = f.result.iterations;
        per[base.label(f.base)] = std::move(e);
    }
    return per;
}

int cmd_norm(const CommonOptions &o, const std::string &instance_path, const std::string &tensor_path,
             std::ostream &out) {
    const io::Instance inst = io::instance_from_json(io::read_file(instance_path));
    const ProductPtr product = make_product(inst.mu1, inst.mu2);
    std::optional<BalancedTensor> t;
    if (!tensor_path.empty()) {
        t = io::tensor_from_json(io::read_file(tensor_path), product);
    } else {
        std::mt19937_64 rng(o.seed);
        t = random_tensor(product, o.level, rng);
    }
    const HaagerupResult h = haagerup_norm(*t, o.tolerance);
    const double mn = min_norm(*t);
    const double reproduction = max_entry_difference(external_product(h.factorization, product), *t);
    const double scale = std::max(1.0, mn);
    const bool ok = reproduction <= 10.0 * o.tolerance * scale && mn <= h.upper_bound + 2.0 * o.tolerance * scale &&
                    h.factorization.bound() <= h.value * (1.0 + 10.0 * o.tolerance) + 1e-12;

    json j = header("norm", o);
    j["level"] = t->level();
    j["h"] = h.value;
    j["min"] = mn;
    j["ratio"] = mn > 0.0 ? json(h.value / mn) : json(nullptr);
    j["lower_bound"] = h.lower_bound;
    j["upper_bound"] = h.upper_bound;
    j["status"] = std::string(to_string(h.status));
    j["certificate"] = {{"bound", h.factorization.bound()}, {"reproduction_error", reproduction}};
    j["per_fiber"] = fiber_report(h, *product->base_space());
    j["passed"] = ok;
    out << j.dump(2) << "\n";
    return ok ? 0 : 1;
}

json sample_json(const FlipSample &s) {
    return {{"source", s.source}, {"index", s.index},       {"h", s.h},
            {"h_flip", s.h_flip}, {"ratio", s.flip_ratio()}};
}

SamplingConfig sampling(const CommonOptions &o, double sparsity) {
    SamplingConfig c;
    c.level = o.level;
    c.trials = o.trials;
    c.seed = o.seed;
    c.tolerance = o.tolerance;
    c.sparsity = sparsity;
    return c;
}

int cmd_flip(const CommonOptions &o, const std::string &instance_path, double sparsity, std::ostream &out) {
    const io::Instance inst = io::instance_from_json(io::read_file(instance_path));
    const FlipBound b = flip_norm_lower_bound(inst.mu1, inst.mu2, sampling(o, sparsity));
    const bool ok = b.lower_bound <= b.certified + 3.0 * o.tolerance * std::max(1.0, b.certified);
    json j = header("flip", o);
    j["level"] = o.level;
    j["trials"] = o.trials;
    j["max_min_fiber"] = b.max_min_fiber;
    j["certified"] = b.certified;
    j["lower_bound"] = b.lower_bound;
    j["samples"] = b.samples.size();
    j["skipped"] = b.skipped;
    j["best"] = b.samples.empty() ? json(nullptr) : sample_json(b.samples[b.best_sample]);
    j["passed"] = ok;
    out << j.dump(2) << "\n";
    return ok ? 0 : 1;
}

int cmd_verify(const CommonOptions &o, const std::string &instance_path, double sparsity, std::ostream &out) {
    const io::Instance inst = io::instance_from_json(io::read_file(instance_path));
    const ProductPtr product = make_product(inst.mu1, inst.mu2);
    const TheoremReport r = verify_theorem(inst.mu1, inst.mu2, sampling(o, sparsity));
    json j = header("verify", o);
    j["level"] = o.level;
    j["trials"] = o.trials;
    j["c"] = {{"max_min_fiber", r.max_min_fiber}, {"certified", r.certified}};
    j["a"] = {{"max_ratio", r.comparison_ratio_max}, {"cap", r.comparison_cap}};
    j["b"] = {{"lower_bound", r.flip_lower_bound}, {"cap", r.flip_cap}};
    j["tau_bound"] = {{"max_reversed_ratio", r.reversed_comparison_max}, {"cap", r.comparison_cap}};
    j["samples"] = r.sampling.samples.size();
    json v = json::array();
    for (const auto &viol : r.violations) {
        v.push_back({{"check", viol.check},
                     {"lhs", viol.lhs},
                     {"rhs", viol.rhs},
                     {"sample", sample_json(r.sampling.samples[viol.sample])},
                     {"tensor", io::to_json(viol.tensor)}});
    }
    j["violations"] = std::move(v);
    j["passed"] = r.passed();
    out << j.dump(2) << "\n";
    return r.passed() ? 0 : 1;
}

int cmd_witness(const CommonOptions &o, std::size_t m, std::ostream &out) {
    if (m == 0) {
        throw InputError("--m must be positive");
    }
    const ProductPtr product = constant_product(m, m);
    const BalancedTensor f = witness_tensor(product, 0, m);
    const Factorization de = witness_factorization(product, 0, m);
    const BalancedTensor ff = flip(f);
    const HaagerupResult hf = haagerup_norm(f, o.tolerance);
    const HaagerupResult hff = haagerup_norm(ff, o.tolerance);
    const double mn = min_norm(f);
    const auto &fp = *ff.product();
    const PointRepresentation rho2(RepresentationKind::fourier_conjugated, fp.left_map.domain(),
                                   fp.left_map.fiber(0));
    const PointRepresentation rho1(RepresentationKind::diagonal, fp.right_map.domain(), fp.right_map.fiber(0));
    const double rho_norm = op_norm(apply_rho_pair(ff, rho2, rho1));
    const double cap = hmin_factorization(ff, FactorSide::balanced).bound();
    const double reproduction = max_entry_difference(external_product(de, product), f);

    const double rm = std::sqrt(static_cast<double>(m));
    const double dm = static_cast<double>(m);
    const double tol = 10.0 * o.tolerance;
    const bool ok = pinned(mn, rm, tol) && pinned(de.bound(), rm, tol) && pinned(rho_norm, dm, tol) &&
                    pinned(cap, dm, tol) && pinned(hf.value, rm, tol) && pinned(hff.value, dm, tol) &&
                    reproduction <= 1e-12;

    json j = header("witness", o);
    j["m"] = m;
    j["h_F"] = hf.value;
    j["h_flip"] = hff.value;
    j["ratio"] = hff.value / hf.value;
    j["certified"] = {{"min_norm_lower", mn},
                      {"factorization_upper", de.bound()},
                      {"rho_pair_lower", rho_norm},
                      {"hmin_cap_upper", cap}};
    j["factorization_norms"] = {{"D", de.left_norm()}, {"E", de.right_norm()}, {"reproduction_error", reproduction}};
    j["tensor"] = io::to_json(f);
    j["factorization"] = io::to_json(de, *product);
    j["passed"] = ok;
    out << j.dump(2) << "\n";
    return ok ? 0 : 1;
}

int cmd_descend(const CommonOptions &o, bool tol_given, const std::string &instance_path,
                const std::string &datum_path, std::ostream &out) {
    const json inst = io::read_file(instance_path);
    const SpaceMap mu = io::cover_from_json(inst);
    const DescentDatum d = io::datum_from_json(datum_path.empty() ? inst : io::read_file(datum_path), mu);
    const double tol = tol_given ? o.tolerance : kDescentTolerance;
    const CocycleReport c = check_cocycle(d, tol);
    const auto &sp = *mu.domain();

    json j = header("descend", o);
    j["tolerance"] = tol;
    const auto &t = c.worst_triple;
    j["cocycle"] = {{"residual", c.cocycle_residual},
                    {"worst_triple", sp.points().empty() ? "" : sp.label(t[0]) + "|" + sp.label(t[1]) + "|" + sp.label(t[2])},
                    {"unitarity_residual", c.unitarity_residual},
                    {"worst_pair", d.phi.empty() ? "" : d.pairs->space->label(c.worst_pair)}};
    j["passed"] = c.passed;
    if (c.passed) {
        const Reconstruction r = reconstruct(d, {}, tol);
        json section = json::object();
        for (std::size_t x = 0; x < r.section.size(); ++x) {
            section[mu.codomain()->label(x)] = sp.label(r.section[x]);
        }
        j["reconstruction"] = {{"section", std::move(section)},
                               {"dims", io::to_json(r.base)},
                               {"unit_residual", unit_residual(r, d)},
                               {"unitary_residual", unitary_residual(r.unit)}};
    } else {
        j["reconstruction"] = nullptr;
    }
    out << j.dump(2) << "\n";
    return c.passed ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Haagerup and minimal norms over fibered products of finite spaces", "hcb"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version()));

    CommonOptions gen_o, norm_o, flip_o, verify_o, witness_o, descend_o;
    std::string profile, output, instance, tensor, datum;
    double sparsity = 0.0;
    std::size_t m = 0;

    auto *gen = app.add_subcommand("gen", "Generate a random instance with given fiber sizes");
    add_common(gen, gen_o);
    gen->add_option("--profile", profile, "[[mu1 fiber sizes], [mu2 fiber sizes]]")->required();
    gen->add_option("--output", output, "Also write the instance to this file");

    auto *norm = app.add_subcommand("norm", "Haagerup and minimal norm of a tensor");
    add_common(norm, norm_o);
    norm->add_option("--instance", instance, "Instance JSON")->required();
    norm->add_option("--tensor", tensor, "Tensor JSON (default: random at --level)");

    auto *flp = app.add_subcommand("flip", "Sampled lower bound for the flip's cb norm");
    add_common(flp, flip_o);
    flp->add_option("--instance", instance, "Instance JSON")->required();
    flp->add_option("--sparsity", sparsity, "Block zeroing probability")->check(CLI::Range(0.0, 1.0));

    auto *verify = app.add_subcommand("verify", "Check every inequality of the flip norm formula on samples");
    add_common(verify, verify_o);
    verify->add_option("--instance", instance, "Instance JSON")->required();
    verify->add_option("--sparsity", sparsity, "Block zeroing probability")->check(CLI::Range(0.0, 1.0));

    auto *witness = app.add_subcommand("witness", "The explicit witness tensor of size m");
    add_common(witness, witness_o);
    witness->add_option("--m", m, "Witness size")->required()->check(CLI::PositiveNumber);

    auto *descend = app.add_subcommand("descend", "Check and reconstruct a descent datum");
    add_common(descend, descend_o);
    descend->add_option("--instance", instance, "Cover and datum JSON")->required();
    descend->add_option("--datum", datum, "Datum JSON (default: read from the instance)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion &) {
        out << version() << "\n";
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*gen) {
            return cmd_gen(gen_o, profile, output, out);
        }
        if (*norm) {
            return cmd_norm(norm_o, instance, tensor, out);
        }
        if (*flp) {
            return cmd_flip(flip_o, instance, sparsity, out);
        }
        if (*verify) {
            return cmd_verify(verify_o, instance, sparsity, out);
        }
        if (*witness) {
            return cmd_witness(witness_o, m, out);
        }
        if (*descend) {
            return cmd_descend(descend_o, descend->count("--tolerance") > 0, instance, datum, out);
        }
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const CheckFailure &e) {
        err << "check failed: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace hcb
