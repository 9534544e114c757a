// repfield: spinor images, residual profiles and Galois scenarios from config files.
//
// Exit codes: 0 success, 1 config or usage error, 2 resource limit or an image that
// is neither certified nor stabilized, 3 a failing verify-paper case.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "repfield/cases.hpp"
#include "repfield/config.hpp"
#include "repfield/errors.hpp"
#include "repfield/report.hpp"
#include "repfield/residual.hpp"
#include "repfield/spinor.hpp"

namespace {

using namespace repfield;

enum Exit { kOk = 0, kConfig = 1, kResource = 2, kVerifyFailed = 3 };

struct RunConfig {
    std::string input;
    int depth = 3;
    std::uint64_t cap = kDefaultEnumerationCap;
    std::uint64_t seed = 0;
    int ext_degree = 1;
    std::string out;
    std::vector<std::string> cases;
};

void emit(const RunConfig& rc, const std::string& text) {
    if (rc.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(rc.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + rc.out + "'");
    f << text;
}

int cmd_image(const RunConfig& rc) {
    const auto h = order_from_config(load_config(rc.input));
    const auto rep = local_defined(h, {rc.depth, rc.cap});
    emit(rc, dump(image_report(rep)));
    if (!rep.image.certified && !rep.image.stabilized) {
        std::cerr << "repfield: image neither certified nor stabilized up to depth " << rep.image.depth
                  << "; raise --cap or --depth\n";
        return kResource;
    }
    return kOk;
}

int cmd_residual(const RunConfig& rc) {
    const auto h = order_from_config(load_config(rc.input));
    const auto alg = residual_algebra(h);
    const auto prof = irreducible_profile(alg, rc.ext_degree, rc.seed);
    emit(rc, dump(residual_report(h, prof, rc.ext_degree, alg.dimension())));
    return kOk;
}

int cmd_scenario(const RunConfig& rc) {
    const auto sc = scenario_from_config(load_config(rc.input));
    const bool t_only = std::all_of(sc.places.begin(), sc.places.end(), [](const PlaceDatum& p) { return p.t.has_value(); });
    if (t_only)
        emit(rc, dump(scenario_t_report(sc, lower_field_from_t(sc))));
    else
        emit(rc, dump(scenario_report(sc, is_defined_global(sc))));
    return kOk;
}

int cmd_verify(const RunConfig& rc) {
    const auto names = rc.cases.empty() ? case_names() : rc.cases;
    Json results = Json::array();
    int passed = 0;
    std::vector<std::string> failed;
    for (const auto& name : names) {
        const auto r = run_case(name, rc.seed);
        std::cerr << (r.pass ? "PASS " : "FAIL ") << name << ": " << r.summary << "\n";
        if (r.pass)
            ++passed;
        else
            failed.push_back(name);
        results.push_back({{"name", r.name}, {"pass", r.pass}, {"summary", r.summary}, {"details", r.details}});
    }
    Json j;
    j["passed"] = passed;
    j["total"] = names.size();
    j["failed"] = failed;
    j["cases"] = results;
    emit(rc, dump(j));
    std::cerr << passed << "/" << names.size() << " PASS\n";
    if (!failed.empty()) {
        std::cerr << "failing cases:";
        for (const auto& f : failed) std::cerr << " " << f;
        std::cerr << "\n";
        return kVerifyFailed;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local spinor images and representation fields of orders"};
    app.require_subcommand(1);
    RunConfig rc;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", rc.out, "Write the JSON report here instead of stdout");
        sub->add_option("--seed", rc.seed, "Seed for randomized steps")->capture_default_str();
    };

    auto* image = app.add_subcommand("image", "Spinor image and local definedness of an order");
    image->add_option("config", rc.input, "Order config")->required();
    image->add_option("--depth", rc.depth, "Deepest window p^depth")->check(CLI::Range(1, 3))->capture_default_str();
    image->add_option("--cap", rc.cap, "Largest p^(Mn) to enumerate")->check(CLI::Range(std::uint64_t{256}, std::uint64_t{1} << 30))->capture_default_str();
    add_common(image);

    auto* residual = app.add_subcommand("residual", "Irreducible dimensions of the residual algebra");
    residual->add_option("config", rc.input, "Order config")->required();
    residual->add_option("--ext-degree", rc.ext_degree, "Extend scalars to F_(p^d)")->check(CLI::Range(1, 4))->capture_default_str();
    add_common(residual);

    auto* scenario = app.add_subcommand("scenario", "Global image, lower and upper fields of a Galois scenario");
    scenario->add_option("config", rc.input, "Scenario config")->required();
    add_common(scenario);

    auto* verify = app.add_subcommand("verify-paper", "Run the reproduction cases");
    verify->add_option("--case", rc.cases, "Case to run (repeatable); all by default")
        ->check(CLI::IsMember(case_names()));
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    try {
        if (image->parsed()) return cmd_image(rc);
        if (residual->parsed()) return cmd_residual(rc);
        if (scenario->parsed()) return cmd_scenario(rc);
        return cmd_verify(rc);
    } catch (const ResourceError& e) {
        std::cerr << "repfield: resource limit: " << e.what() << "\n";
        return kResource;
    } catch (const ConfigError& e) {
        std::cerr << "repfield: config error: " << e.what() << "\n";
        return kConfig;
    } catch (const TypeError& e) {
        std::cerr << "repfield: config error: " << e.what() << "\n";
        return kConfig;
    } catch (const PreconditionError& e) {
        std::cerr << "repfield: config error: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "repfield: internal error: " << e.what() << "\n";
        return kResource;
    }
}
