// relclass: exact arithmetic for relative class numbers of orders in real
// quadratic fields, plus the batch verifications around Q(sqrt(46)).
#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "relclass/relclass.hpp"

namespace {

using namespace relclass;

Int parse_int(const std::string& s, const char* what) {
    if (s.empty() || s.find_first_not_of("0123456789", s[0] == '-' ? 1 : 0) != std::string::npos) {
        throw std::domain_error(std::string(what) + ": not an integer: " + s);
    }
    return Int(s);
}

struct OutputOptions {
    std::string path;
    std::string format = "jsonl";

    void write(const std::vector<ResultRecord>& records) const {
        if (path.empty()) return;
        persist(records, path, format == "tsv" ? OutputFormat::tsv : OutputFormat::jsonl);
    }
};

void print_campaign(const CampaignResult& res) {
    std::cout << res.name;
    for (const auto& [k, v] : res.parameters) std::cout << " " << k << "=" << v;
    std::cout << ": " << (res.passed ? "ok" : "FAILED");
    for (const auto& [k, v] : res.counts) std::cout << ", " << k << "=" << v;
    std::cout << " (" << res.wall_ms << " ms)\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fundamental units, relative ideal/strict/form class numbers of orders\n"
                 "in real quadratic fields, and the Q(sqrt(46)) verification campaigns."};
    app.require_subcommand(1);
    app.fallthrough();  // let --jobs/--out/--format appear after the subcommand

    unsigned jobs = 0;
    OutputOptions out;
    app.add_option("--jobs", jobs, "worker threads (0 = all cores, or RELCLASS_JOBS)");
    app.add_option("--out", out.path, "append result records to this file");
    app.add_option("--format", out.format, "result file encoding")
        ->check(CLI::IsMember({"jsonl", "tsv"}))
        ->default_str("jsonl");

    std::string arg_m, arg_d0, arg_f, arg_d;
    std::string fmax = "10000", mmax = "60000", pmax = "10000", limit = "20000", sweep_mmax = "45";
    unsigned nmax = 5;

    auto* cmd_unit = app.add_subcommand("unit", "fundamental unit of Q(sqrt(m))");
    cmd_unit->add_option("m", arg_m, "squarefree m > 1")->required();

    auto* cmd_relcn = app.add_subcommand("relcn", "relative ideal class number h(d0 f^2)/h(d0)");
    cmd_relcn->add_option("d0", arg_d0, "positive non-square discriminant")->required();
    cmd_relcn->add_option("f", arg_f, "conductor f >= 1")->required();

    auto* cmd_record = app.add_subcommand("record", "psi, phi and all relative class numbers of one order");
    cmd_record->add_option("d0", arg_d0, "fundamental discriminant")->required();
    cmd_record->add_option("f", arg_f, "conductor f >= 1")->required();

    auto* cmd_forms = app.add_subcommand("forms", "form class number H(d) by reduction cycles");
    cmd_forms->add_option("d", arg_d, "positive non-square discriminant")->required();

    auto* cmd_verify = app.add_subcommand("verify46", "every non-maximal order of Q(sqrt(46)) has relative class number > 1");
    cmd_verify->add_option("--fmax", fmax, "largest conductor checked (primes above 1000)");

    auto* cmd_scan = app.add_subcommand("scan-mdy", "squarefree m with m | y(eps_m), with conductor evidence per hit");
    cmd_scan->add_option("--mmax", mmax, "scan bound (the full 1e7 census takes hours)");

    auto* cmd_aac = app.add_subcommand("aac", "Ankeny-Artin-Chowla / Mordell scan: does p divide y(eps_p)?");
    cmd_aac->add_option("--pmax", pmax, "largest prime checked");

    auto* cmd_cohn = app.add_subcommand("cohn", "relative class number 1 all the way up the 5-power tower");
    cmd_cohn->add_option("--nmax", nmax, "tower height");

    auto* cmd_sweep = app.add_subcommand("sweep31", "witness conductor with relative class number 1 for each small radicand");
    cmd_sweep->add_option("--mmax", sweep_mmax, "scan bound");

    auto* cmd_cross = app.add_subcommand("crosscheck", "form-count oracle vs psi/phi route for all d0 f^2 <= limit");
    cmd_cross->add_option("--limit", limit, "discriminant bound");

    try {
        app.parse(argc, argv);

        if (cmd_unit->parsed()) {
            QuadUnit u = fundamental_unit(parse_int(arg_m, "m"));
            std::cout << "x=" << u.x << " y=" << u.y << " c=" << u.c
                      << " norm=" << (u.norm > 0 ? "+1" : "-1") << "\n";
            out.write({record_of(u)});
        } else if (cmd_relcn->parsed()) {
            Int d0 = parse_int(arg_d0, "d0");
            Int f = parse_int(arg_f, "f");
            std::cout << relative_class_number(d0, f) << "\n";
            if (out.path.empty() == false && is_fundamental_discriminant(d0)) {
                out.write({record_of(class_record(d0, f))});
            }
        } else if (cmd_record->parsed()) {
            ClassRecord rec = class_record(parse_int(arg_d0, "d0"), parse_int(arg_f, "f"));
            std::cout << "d0=" << rec.order.d0 << " f=" << rec.order.f << " m=" << rec.order.m
                      << " psi=" << rec.psi << " phi=" << rec.phi << " h_rel=" << rec.h_rel
                      << " norm_eps_d0=" << (rec.norm_eps_d0 > 0 ? "+1" : "-1")
                      << " norm_eps_d0f2=" << (rec.norm_eps_d0f2 > 0 ? "+1" : "-1")
                      << " h_plus_rel=" << rec.h_plus_rel << " H_rel=" << rec.H_rel << "\n";
            out.write({record_of(rec)});
        } else if (cmd_forms->parsed()) {
            Int d = parse_int(arg_d, "d");
            Int H = form_class_number(d);
            std::cout << "H=" << H << "\n";
            out.write({form_count_record(d, H)});
        } else {
            CampaignResult res;
            if (cmd_verify->parsed()) res = verify_q46(parse_int(fmax, "--fmax"), jobs);
            else if (cmd_scan->parsed()) res = scan_m_divides_y(parse_int(mmax, "--mmax"), jobs);
            else if (cmd_aac->parsed()) res = scan_aac(parse_int(pmax, "--pmax"), jobs);
            else if (cmd_cohn->parsed()) res = cohn_tower(nmax);
            else if (cmd_sweep->parsed()) res = sweep_witnesses(parse_int(sweep_mmax, "--mmax"), jobs);
            else res = cross_check_forms(parse_int(limit, "--limit"), jobs);

            print_campaign(res);
            if (res.name == "scan-mdy") {
                std::cout << "hits:";
                for (const auto& it : res.items) {
                    for (const auto& [k, v] : it.fields) {
                        if (k == "m") std::cout << " " << v;
                    }
                }
                std::cout << "\n";
            }
            out.write(records_of(res));
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const verification_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
