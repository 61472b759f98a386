#include "gwpt/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

namespace gwpt {

namespace {

json read_document(const std::string &path, const std::function<std::string()> &read_input) {
    std::string text;
    if (path.empty()) {
        text = read_input();
    } else {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open input file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("malformed JSON input");
    return j;
}

PartitionVector parse_mu(const std::string &text) {
    std::vector<std::vector<long>> parts;
    std::string trimmed;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty()) return PartitionVector::make({});
    std::stringstream outer(trimmed);
    std::string chunk;
    while (std::getline(outer, chunk, ';')) {
        std::vector<long> p;
        std::stringstream inner(chunk);
        std::string item;
        while (std::getline(inner, item, ',')) {
            if (item.empty()) throw std::invalid_argument("malformed partition: " + text);
            p.push_back(std::stol(item));
        }
        if (!p.empty()) parts.push_back(std::move(p));
    }
    return PartitionVector::make(std::move(parts));
}

std::string unit_name(const GaussianRational &u) {
    if (u == GaussianRational(1)) return "1";
    if (u == GaussianRational(-1)) return "-1";
    if (u == GaussianRational::unit_i()) return "i";
    if (u == -GaussianRational::unit_i()) return "-i";
    return to_string(u);
}

QForm q_form_from_any(const json &j) {
    if (j.contains("form")) return q_form_from_json(j.at("form"));
    return q_form_from_json(j);
}

}  // namespace

CommandResult run_command(const std::vector<std::string> &args,
                          const std::function<std::string()> &read_input) {
    CLI::App app{"exact combinatorics and series checks for the toric GW/PT correspondence"};
    app.require_subcommand(1);

    // option storage; lives for the whole invocation
    std::string input_path;
    std::string side, variant = "derived", case_name, mu_text;
    long vertex_bound = 2, depth = 1, n_param = 1, mult = 1, order = 24;
    long d_param = 0, ell = 1, sigma = 0;

    json payload;
    std::function<void()> action;
    auto input_doc = [&]() { return read_document(input_path, read_input); };
    auto with_input = [&](CLI::App *cmd) {
        cmd->add_option("input", input_path, "JSON input file (default: stdin)");
    };

    auto *star = app.add_subcommand("star", "operations on stars");
    star->require_subcommand(1);

    auto *star_normalize = star->add_subcommand("normalize", "Smith data and normal-form transform");
    with_input(star_normalize);
    star_normalize->callback([&]() {
        action = [&]() {
            Star s = star_from_json(input_doc());
            MultiplicityData md = multiplicity_and_normalize(s);
            payload["n"] = md.n;
            payload["m"] = md.m;
            payload["N"] = md.N;
            if (md.U) {
                payload["U"] = to_json(*md.U);
                payload["normalized_star"] = to_json(transform_star(*md.U, s));
            } else {
                payload["U"] = nullptr;
                payload["normalized_star"] = nullptr;
            }
        };
    });

    auto *star_balance = star->add_subcommand("balance", "test the balancing condition");
    with_input(star_balance);
    star_balance->callback([&]() {
        action = [&]() { payload["balanced"] = is_balanced(star_from_json(input_doc())); };
    });

    auto *star_visible = star->add_subcommand("visible", "test visibility of a star");
    with_input(star_visible);
    star_visible->callback([&]() {
        action = [&]() { payload["visible"] = is_visible_star(star_from_json(input_doc())); };
    });

    auto *star_mult = star->add_subcommand("multiplicity", "Smith multiplicity data");
    with_input(star_mult);
    star_mult->callback([&]() {
        action = [&]() {
            MultiplicityData md = multiplicity_and_normalize(star_from_json(input_doc()));
            payload["n"] = md.n;
            payload["m"] = md.m;
            payload["N"] = md.N;
        };
    });

    auto *cx = app.add_subcommand("complex", "operations on Chow 1-complexes");
    cx->require_subcommand(1);

    auto *cx_stab = cx->add_subcommand("stabilize", "erase unstable vertices");
    with_input(cx_stab);
    cx_stab->callback([&]() {
        action = [&]() { payload = to_json(stabilize(complex_from_json(input_doc()))); };
    });

    auto *cx_vis = cx->add_subcommand("visible", "test visibility of a complex");
    with_input(cx_vis);
    cx_vis->callback([&]() {
        action = [&]() { payload["visible"] = is_visible_complex(complex_from_json(input_doc())); };
    });

    auto *cx_asym = cx->add_subcommand("asymptotic-star", "star of the unbounded rays");
    with_input(cx_asym);
    cx_asym->callback([&]() {
        action = [&]() { payload = to_json(asymptotic_star(complex_from_json(input_doc()))); };
    });

    auto *poset = app.add_subcommand("poset", "degenerations and the star partial order");
    poset->require_subcommand(1);

    auto *po_deg = poset->add_subcommand("degenerations", "stable degenerations of a star");
    po_deg->add_option("--vertex-bound", vertex_bound, "maximal vertex count (2 or 3)")->required();
    with_input(po_deg);
    po_deg->callback([&]() {
        action = [&]() {
            payload = to_json(one_step_degenerations(star_from_json(input_doc()), vertex_bound));
        };
    });

    auto *po_small = poset->add_subcommand("smaller", "strictly smaller stars");
    po_small->add_option("--depth", depth, "closure depth")->required();
    with_input(po_small);
    po_small->callback([&]() {
        action = [&]() {
            auto stars = smaller_stars(star_from_json(input_doc()), depth);
            json arr = json::array();
            for (const auto &w : stars) arr.push_back(to_json(w));
            payload["stars"] = std::move(arr);
            payload["count"] = stars.size();
        };
    });

    auto *po_curves = poset->add_subcommand("curves4v", "rigid curves of the 4-valent setup");
    po_curves->add_option("--n", n_param, "multiplicity parameter")->required();
    po_curves->add_option("--case", case_name, "I or II")->required();
    po_curves->callback([&]() {
        action = [&]() {
            FourValentCase which;
            if (case_name == "I")
                which = FourValentCase::I;
            else if (case_name == "II")
                which = FourValentCase::II;
            else
                throw std::invalid_argument("--case must be I or II");
            auto curves = enumerate_4valent_curves(n_param, which);
            json arr = json::array();
            for (const auto &g : curves) arr.push_back(to_json(g));
            payload["complexes"] = std::move(arr);
            payload["count"] = curves.size();
        };
    });

    auto *series = app.add_subcommand("series", "generating series and the correspondence");
    series->require_subcommand(1);

    auto *se_prin = series->add_subcommand("principal", "principal series of a trivalent star");
    se_prin->add_option("--side", side, "gw or pt")->required();
    se_prin->add_option("--mult", mult, "multiplicity N")->required();
    se_prin->add_option("--order", order, "truncation order (gw side)");
    se_prin->add_option("--variant", variant, "pt closed form: derived or display");
    se_prin->callback([&]() {
        action = [&]() {
            if (side == "gw") {
                payload = to_json(principal_gw(mult, order));
            } else if (side == "pt") {
                if (variant == "derived")
                    payload = to_json(principal_pt(mult));
                else if (variant == "display")
                    payload = to_json(principal_pt_display(mult));
                else
                    throw std::invalid_argument("--variant must be derived or display");
            } else {
                throw std::invalid_argument("--side must be gw or pt");
            }
        };
    });

    auto *se_lin = series->add_subcommand("linear", "maximal-tangency linear star series");
    se_lin->add_option("--side", side, "gw or pt")->required();
    se_lin->add_option("--d", d_param, "degree")->required();
    se_lin->add_option("--ell", ell, "partition length")->required();
    se_lin->callback([&]() {
        action = [&]() {
            if (side == "gw")
                payload = to_json(linear_star_gw(d_param, ell));
            else if (side == "pt")
                payload = to_json(linear_star_pt(d_param, ell));
            else
                throw std::invalid_argument("--side must be gw or pt");
        };
    });

    auto *se_glue = series->add_subcommand("glue", "degeneration-formula gluing term");
    se_glue->add_option("--side", side, "gw or pt")->required();
    se_glue->add_option("--mu", mu_text, "edge partitions, e.g. \"3,1;2\"");
    with_input(se_glue);
    se_glue->callback([&]() {
        action = [&]() {
            json doc = input_doc();
            PartitionVector mu = parse_mu(mu_text);
            const json &vs = doc.contains("vertices") ? doc.at("vertices") : doc;
            if (side == "gw") {
                std::vector<GWSeries> xs;
                for (const auto &v : vs) xs.push_back(gw_series_from_json(v));
                payload = to_json(glue_degeneration(xs, mu));
            } else if (side == "pt") {
                std::vector<PTSeries> xs;
                for (const auto &v : vs) xs.push_back(pt_series_from_json(v));
                payload = to_json(glue_degeneration(xs, mu));
            } else {
                throw std::invalid_argument("--side must be gw or pt");
            }
        };
    });

    auto *se_check = series->add_subcommand("check", "GW/PT change-of-variables check");
    se_check->add_option("--d", d_param, "anticanonical degree")->required();
    se_check->add_option("--sigma", sigma, "sum of l(mu_j) - |mu_j|")->required();
    se_check->add_option("--order", order, "truncation order");
    with_input(se_check);
    se_check->callback([&]() {
        action = [&]() {
            json doc = input_doc();
            PTSeries pt = pt_series_from_json(doc.at("pt"));
            GWSeries gw = gw_series_from_json(doc.at("gw"));
            CorrespondenceResult r = correspondence_check(pt, gw, d_param, sigma, order);
            if (r.insufficient_truncation)
                throw std::invalid_argument("insufficient truncation for the comparison");
            payload["pass"] = r.pass;
            if (r.first_mismatch_exponent)
                payload["first_mismatch_exponent"] = *r.first_mismatch_exponent;
            else
                payload["first_mismatch_exponent"] = nullptr;
        };
    });

    auto *se_fit = series->add_subcommand("fit", "search the prefactor triple");
    se_fit->add_option("--order", order, "truncation order");
    with_input(se_fit);
    se_fit->callback([&]() {
        action = [&]() {
            json doc = input_doc();
            PTSeries pt = pt_series_from_json(doc.at("pt"));
            GWSeries gw = gw_series_from_json(doc.at("gw"));
            auto fit = fit_prefactor(pt, gw, order);
            payload["found"] = fit.has_value();
            if (fit) {
                payload["d"] = fit->d;
                payload["sigma"] = fit->sigma;
                payload["unit"] = unit_name(fit->unit);
            }
        };
    });

    auto *se_poly = series->add_subcommand("is-laurent-poly", "polynomiality predicate");
    with_input(se_poly);
    se_poly->callback([&]() {
        action = [&]() {
            QForm reduced = q_form_from_any(input_doc()).reduce();
            payload["laurent_polynomial"] = reduced.denominator_factors().empty();
            payload["reduced"] = to_json(reduced);
            payload["text"] = reduced.to_string();
        };
    });

    CommandResult result;
    result.output["status"] = "ok";
    result.output["payload"] = nullptr;
    result.output["diagnostics"] = json::array();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (!action) throw std::invalid_argument("no subcommand given");
        action();
        result.output["payload"] = std::move(payload);
    } catch (const CLI::ParseError &e) {
        result.exit_code = 1;
        result.output["status"] = "error";
        result.output["diagnostics"].push_back(std::string("argument error: ") + e.what());
    } catch (const std::invalid_argument &e) {
        result.exit_code = 1;
        result.output["status"] = "error";
        result.output["diagnostics"].push_back(e.what());
    } catch (const std::exception &e) {
        result.exit_code = 2;
        result.output["status"] = "error";
        result.output["diagnostics"].push_back(std::string("internal error: ") + e.what());
    }
    return result;
}

}  // namespace gwpt
