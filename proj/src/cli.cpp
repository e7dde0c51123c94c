// Copyright 2026 The ctxprob Authors
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

#include "ctxprob/cli.hpp"

#include <iomanip>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"

#include "ctxprob/classical.hpp"
#include "ctxprob/lattice.hpp"
#include "ctxprob/measurement.hpp"
#include "ctxprob/muprob.hpp"

namespace ctxprob {

using nlohmann::json;

namespace {

struct Options {
    std::string file;
    std::string format = "text";
    std::size_t depth = 2;
    std::string a;
    std::string b;
    std::string procedure;
    std::vector<std::string> thetas;
    std::size_t segments = 10000;
};

void add_format(CLI::App *cmd, Options &opts) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
}

void emit(std::ostream &out, const Report &report, const std::string &format) {
    if (format == "json") {
        out << to_json(report).dump(2) << "\n";
    } else {
        write_text(out, report);
    }
}

CheckResult preorder_check(const ContextualModel &model) {
    const auto pre = build_preorder(model);
    const Entity &entity = model.entity();
    CheckResult c{"preorder"};
    c.required = false;
    c.tolerance = pre.tolerance;
    c.verdict = pre.is_partial_order() ? Verdict::Pass : Verdict::Fail;
    c.detail = std::to_string(pre.classes.size()) + " classes, " +
               (pre.is_partial_order() ? "a partial order on the properties" : "not antisymmetric");
    for (const auto &cls : pre.classes) {
        std::string line = "class {";
        for (std::size_t k = 0; k < cls.size(); ++k) {
            line += (k ? ", " : "") + entity.name(PropertyId{std::uint32_t(cls[k])});
        }
        c.witnesses.push_back(line + "}");
    }
    for (std::size_t i = 0; i < pre.classes.size(); ++i) {
        for (std::size_t j = 0; j < pre.classes.size(); ++j) {
            if (i != j && pre.quotient[i][j]) {
                c.witnesses.push_back(entity.name(PropertyId{std::uint32_t(pre.classes[i].front())}) + " < " +
                                      entity.name(PropertyId{std::uint32_t(pre.classes[j].front())}));
            }
        }
    }
    return c;
}

std::string format_double(double x) {
    std::ostringstream out;
    out << std::setprecision(12) << x;
    return out.str();
}

int run_check(const Options &opts, std::ostream &out, bool with_lattice) {
    LoadedModel loaded = load_model_file(opts.file);
    Report report = check_model(loaded, opts.depth);
    if (with_lattice) {
        Report lattice = lattice_report(loaded);
        report.suite = "report";
        report.append(lattice);
    }
    emit(out, report, opts.format);
    return report.passed() ? kExitPass : kExitCheckFailure;
}

int run_lattice(const Options &opts, std::ostream &out) {
    Report report = lattice_report(load_model_file(opts.file));
    emit(out, report, opts.format);
    return report.passed() ? kExitPass : kExitCheckFailure;
}

int run_eval(const Options &opts, std::ostream &out, std::ostream &err) {
    LoadedModel loaded = load_model_file(opts.file);
    if (!loaded.model) {
        err << "error: " << opts.file << " has no contextual model to evaluate\n";
        return kExitUsage;
    }
    const ContextualModel &model = *loaded.model;
    Proposition a = Proposition::state(StateId{0});
    Proposition b = a;
    try {
        a = parse_proposition(opts.a, model.entity());
    } catch (const ParseError &e) {
        err << "error: A: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        b = parse_proposition(opts.b, model.entity());
    } catch (const ParseError &e) {
        err << "error: B: " << e.what() << "\n";
        return kExitUsage;
    }

    MeanConditional result{};
    try {
        if (opts.procedure.empty()) {
            result = mean_conditional(model, a, b);
        } else {
            const MeasurementProcedure *m = model.catalog().find(opts.procedure);
            if (!m) {
                err << "error: unknown procedure '" << opts.procedure << "'\n";
                return kExitUsage;
            }
            MeanCase which = classify_mean(a, b, *m);
            result = {mean_conditional(model, a, b, *m), which, which == MeanCase::BothState ? "" : m->id};
        }
    } catch (const CaseMismatch &e) {
        err << "error: case mismatch: " << e.what() << "\n";
        return kExitCheckFailure;
    } catch (const ConditionNull &e) {
        err << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }

    if (opts.format == "json") {
        json j;
        j["a"] = print(a, model.entity());
        j["b"] = print(b, model.entity());
        j["value"] = result.value.to_double();
        if (result.value.is_exact()) {
            j["exact"] = result.value.str();
        }
        j["case"] = to_string(result.which);
        j["procedure"] = result.procedure;
        out << j.dump(2) << "\n";
    } else {
        out << format_double(result.value.to_double());
        if (result.value.is_exact() && result.value.str() != format_double(result.value.to_double())) {
            out << " (" << result.value.str() << ")";
        }
        out << "  case " << to_string(result.which);
        if (!result.procedure.empty()) {
            out << ", procedure " << result.procedure;
        }
        out << "\n";
    }
    return kExitPass;
}

int run_demo_born(const Options &opts, std::ostream &out, std::ostream &err) {
    std::vector<double> thetas;
    if (opts.thetas.empty()) {
        using std::numbers::pi;
        thetas = {0.0, pi / 6, pi / 3, pi / 2, 2 * pi / 3, 5 * pi / 6, pi};
    }
    for (const auto &text : opts.thetas) {
        try {
            thetas.push_back(parse_angle(text));
        } catch (const std::invalid_argument &e) {
            err << "error: bad angle '" << text << "': " << e.what() << "\n";
            return kExitUsage;
        }
    }
    if (opts.segments < 1) {
        err << "error: --segments must be at least 1\n";
        return kExitUsage;
    }
    BornReconstruction result;
    try {
        result = band_reconstruction(thetas, opts.segments);
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (opts.format == "json") {
        json j;
        j["segments"] = result.segments;
        j["bound"] = result.bound;
        j["within_bound"] = result.within_bound();
        j["rows"] = json::array();
        for (const auto &r : result.rows) {
            j["rows"].push_back({{"theta", r.theta}, {"born", r.born}, {"mean", r.mean}, {"gap", r.gap}});
        }
        out << j.dump(2) << "\n";
    } else {
        auto cell = [&](const std::string &text) { out << std::left << std::setw(20) << text << ' '; };
        for (const char *h : {"theta", "born", "mean", "gap"}) {
            cell(h);
        }
        out << "bound\n";
        for (const auto &r : result.rows) {
            for (double x : {r.theta, r.born, r.mean, r.gap}) {
                cell(format_double(x));
            }
            out << format_double(result.bound) << "\n";
        }
        out << (result.within_bound() ? "all gaps within bound\n" : "gap exceeds bound\n");
    }
    return result.within_bound() ? kExitPass : kExitCheckFailure;
}

}  // namespace

Report check_model(const LoadedModel &loaded, std::size_t depth) {
    Report report{"check", {}};
    if (loaded.model) {
        const ContextualModel &model = *loaded.model;
        report.append(verify_kolmogorov(model.space()));
        Report tmump{"procedure_independence", {}};
        tmump.add(verify_tmump(model, depth).check());
        report.append(tmump);
        const auto family = q_probability_table(model);
        if (model.lattice()) {
            report.append(check_ortholattice(*model.lattice()));
            report.append(check_model_gpm(model, family));
        }
        for (const auto &t : model.first_kind()) {
            Report one = validate_first_kind(family, t, model.comparison_tolerance());
            one.suite = "first_kind[" + model.entity().name(t.property) + "]";
            report.append(one);
        }
        if (loaded.backend == Backend::Classical) {
            report.append(verify_cm_collapse(model));
        }
        if (loaded.backend == Backend::Band) {
            std::vector<std::string> names;
            for (std::uint32_t s = 0; s < model.entity().state_count(); ++s) {
                names.push_back(model.entity().name(StateId{s}));
            }
            report.append(band_reconstruction(loaded.band_thetas, loaded.band_segments, names).report());
        }
    }
    if (loaded.hilbert) {
        report.append(check_hilbert_model(*loaded.hilbert));
    }
    return report;
}

Report lattice_report(const LoadedModel &loaded) {
    Report report{"lattice", {}};
    if (loaded.model) {
        const ContextualModel &model = *loaded.model;
        if (model.lattice()) {
            report.append(check_ortholattice(*model.lattice()));
            report.append(check_model_gpm(model, q_probability_table(model)));
        } else {
            report.add({"property_lattice", Verdict::Skipped, "no property lattice declared"});
        }
        report.add(preorder_check(model));
    }
    if (loaded.hilbert) {
        report.append(check_hilbert_model(*loaded.hilbert));
    }
    return report;
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options opts;
    CLI::App app{"Contextual probability models: verification and queries", "ctxprob"};
    app.require_subcommand(1);

    auto *check = app.add_subcommand("check", "Run every applicable verification suite");
    check->add_option("file", opts.file, "Model file")->required();
    check->add_option("--depth", opts.depth, "Connective depth for procedure independence")->capture_default_str();
    add_format(check, opts);

    auto *eval = app.add_subcommand("eval", "Evaluate the mean conditional probability <p(A|B)>");
    eval->add_option("file", opts.file, "Model file")->required();
    eval->add_option("A", opts.a, "Conditioned proposition")->required();
    eval->add_option("B", opts.b, "Condition")->required();
    eval->add_option("--procedure", opts.procedure, "Measurement procedure id");
    add_format(eval, opts);

    auto *lattice = app.add_subcommand("lattice", "Check the property lattice and preorder");
    lattice->add_option("file", opts.file, "Model file")->required();
    add_format(lattice, opts);

    auto *demo = app.add_subcommand("demo-born", "Band-model means against Born values");
    demo->add_option("--theta", opts.thetas, "Polar angles, e.g. 0,pi/3,2*pi/3")->delimiter(',');
    demo->add_option("--segments", opts.segments, "Number of micro-contexts")->capture_default_str();
    add_format(demo, opts);

    auto *report = app.add_subcommand("report", "Verification and lattice report");
    report->add_option("file", opts.file, "Model file")->required();
    report->add_option("--depth", opts.depth, "Connective depth for procedure independence")->capture_default_str();
    add_format(report, opts);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (check->parsed()) {
            return run_check(opts, out, false);
        }
        if (report->parsed()) {
            return run_check(opts, out, true);
        }
        if (lattice->parsed()) {
            return run_lattice(opts, out);
        }
        if (eval->parsed()) {
            return run_eval(opts, out, err);
        }
        return run_demo_born(opts, out, err);
    } catch (const ModelError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace ctxprob
