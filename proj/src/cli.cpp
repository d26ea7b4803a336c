#include "mueller/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "mueller/classifier.hpp"
#include "mueller/families.hpp"
#include "mueller/json_io.hpp"
#include "mueller/verifier.hpp"

namespace mueller::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path, std::istream& in) {
    if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open input file '" + path + "'");
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

FourVector parse_vector(const std::string& text, const std::string& flag) {
    std::vector<double> xs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            xs.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("--" + flag + ": '" + item + "' is not a number");
        }
    }
    if (xs.size() != 4) throw UsageError("--" + flag + " expects 4 comma-separated numbers a0,a1,a2im,a3");
    return {xs[0], xs[1], xs[2], xs[3]};
}

std::string valid_family_list() {
    std::string s;
    for (const auto& d : catalog()) s += (s.empty() ? "" : " ") + d.name;
    return s;
}

struct Options {
    std::string input = "-";
    double tol = 1e-9;
    std::string family;
    std::uint64_t seed = 1;
    std::vector<std::pair<std::string, std::optional<double>>> scalars;
    std::vector<std::pair<Slot, std::optional<std::string>>> blocks;
    std::string variant;
    bool all = false;
    int samples = 100;
    std::uint64_t verify_seed = default_verify_seed;
};

int cmd_classify(const Options& o, std::istream& in, std::ostream& out) {
    const MatrixDocument doc = parse_matrix_document(read_input(o.input, in));
    Json j = to_json(classify(doc.g, o.tol));
    if (doc.label) j["label"] = *doc.label;
    out << dump(j);
    return ok;
}

int cmd_generate(const Options& o, std::ostream& out) {
    const auto id = parse_family(o.family);
    if (!id) throw UsageError("unknown family '" + o.family + "'; valid ids: " + valid_family_list());
    const auto& d = descriptor(*id);

    Rng rng(o.seed);
    FamilyParams fp = random_family_params(*id, rng);
    for (const auto& [name, value] : o.scalars) {
        if (!value) continue;
        auto it = std::find_if(fp.scalars.begin(), fp.scalars.end(), [&](const NamedScalar& s) { return s.name == name; });
        if (it == fp.scalars.end()) throw UsageError("family " + d.name + " has no scalar " + name);
        it->value = *value;
    }
    for (const auto& [slot, text] : o.blocks) {
        if (!text) continue;
        auto it = std::find_if(fp.blocks.begin(), fp.blocks.end(), [&](const NamedBlock& b) { return b.slot == slot; });
        if (it == fp.blocks.end())
            throw UsageError(std::string("block ") + slot_name(slot) + " is not free in family " + d.name);
        it->value = parse_vector(*text, slot_name(slot));
    }

    const ParamSet p = construct(*id, fp);
    Json j = Json::object();
    j["g"] = to_json(params_to_matrix(p));
    j["params"] = to_json(p);
    j["family"] = d.name;
    j["scalars"] = scalars_json(fp);
    out << dump(j);
    return ok;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.samples < 1) throw UsageError("--samples must be >= 1");
    SuiteReport rep;
    if (o.all) {
        if (!o.variant.empty()) throw UsageError("use either --variant or --all");
        rep = verify_all(o.samples, default_verify_tol, o.verify_seed);
    } else if (o.variant == "R3") {
        rep.variants.push_back(verify_rank3(o.samples, default_verify_tol, o.verify_seed));
        rep.pass = rep.variants.back().pass;
    } else if (!o.variant.empty()) {
        const auto tag = parse_ansatz_tag(o.variant);
        if (!tag) {
            std::string valid;
            for (const auto& v : ansatz_variants()) valid += std::string(v.name) + " ";
            throw UsageError("unknown variant '" + o.variant + "'; valid: " + valid + "R3");
        }
        rep.variants.push_back(verify_solution_table(*tag, o.samples, default_verify_tol, o.verify_seed));
        rep.pass = rep.variants.back().pass;
    } else {
        throw UsageError("verify needs --variant <tag> or --all");
    }
    out << dump(to_json(rep));
    err << format_text(rep);
    return rep.pass ? ok : verification_failed;
}

int cmd_det(const Options& o, std::istream& in, std::ostream& out) {
    const MatrixDocument doc = parse_matrix_document(read_input(o.input, in));
    Json j = Json::object();
    j["det"] = det_direct(doc.g);
    j["det_paper"] = det_paper(matrix_to_params(doc.g));
    out << dump(j);
    return ok;
}

int cmd_rank(const Options& o, std::istream& in, std::ostream& out) {
    const MatrixDocument doc = parse_matrix_document(read_input(o.input, in));
    Json j = Json::object();
    j["rank"] = numerical_rank(doc.g, o.tol);
    j["tol"] = o.tol;
    out << dump(j);
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Four-vector parameterization and degenerate-family classifier for real 4x4 matrices", "mueller"};
    app.require_subcommand(1);

    auto positive = CLI::PositiveNumber;

    auto* classify_cmd = app.add_subcommand("classify", "Classify a matrix document");
    classify_cmd->add_option("input", o.input, "Matrix document path, or - for stdin")->required();
    classify_cmd->add_option("--tol", o.tol, "Membership and rank tolerance")->check(positive);

    auto* generate_cmd = app.add_subcommand("generate", "Generate a family member");
    generate_cmd->add_option("--family", o.family, "Family id, e.g. K5P or R3_12")->required();
    generate_cmd->add_option("--seed", o.seed, "Random seed for unspecified scalars and blocks");
    for (const char* name : {"A", "B", "C", "D", "alpha", "beta", "s", "t"}) o.scalars.emplace_back(name, std::nullopt);
    for (auto& [name, value] : o.scalars) generate_cmd->add_option("--" + name, value, "Scalar " + name);
    for (Slot s : all_slots) o.blocks.emplace_back(s, std::nullopt);
    for (auto& [slot, text] : o.blocks)
        generate_cmd->add_option(std::string("--") + slot_name(slot), text,
                                 std::string("Free block ") + slot_name(slot) + " as a0,a1,a2im,a3");

    auto* verify_cmd = app.add_subcommand("verify", "Verify solution tables under the multiplication law");
    verify_cmd->add_option("--variant", o.variant, "Ansatz variant tag (Ik ... IIInlm) or R3");
    verify_cmd->add_flag("--all", o.all, "Verify every variant and the rank-3 families");
    verify_cmd->add_option("--samples", o.samples, "Random pairs per family");
    verify_cmd->add_option("--seed", o.verify_seed, "Random seed");

    app.add_subcommand("catalog", "Print the family catalog");

    auto* det_cmd = app.add_subcommand("det", "Determinant of a matrix document");
    det_cmd->add_option("input", o.input, "Matrix document path, or - for stdin")->required();

    auto* rank_cmd = app.add_subcommand("rank", "Numerical rank of a matrix document");
    rank_cmd->add_option("input", o.input, "Matrix document path, or - for stdin")->required();
    rank_cmd->add_option("--tol", o.tol, "Relative pivot tolerance")->check(positive);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return usage_error;
    }

    try {
        if (classify_cmd->parsed()) return cmd_classify(o, in, out);
        if (generate_cmd->parsed()) return cmd_generate(o, out);
        if (verify_cmd->parsed()) return cmd_verify(o, out, err);
        if (det_cmd->parsed()) return cmd_det(o, in, out);
        if (rank_cmd->parsed()) return cmd_rank(o, in, out);
        out << dump(catalog_json());
        return ok;
    } catch (const DocumentError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
    }
    return usage_error;
}

}  // namespace mueller::cli
