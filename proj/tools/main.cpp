#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "vendor/CLI11.hpp"

#include "hecke_f2/cache.hpp"
#include "hecke_f2/errors.hpp"
#include "hecke_f2/fps2.hpp"
#include "hecke_f2/galois.hpp"
#include "hecke_f2/genforms.hpp"
#include "hecke_f2/report.hpp"
#include "hecke_f2/spaces.hpp"
#include "hecke_f2/tangent.hpp"
#include "hecke_f2/verify.hpp"

namespace {

int emit(const std::string& text, const std::string& out_path) {
    std::string body = text;
    if (!body.empty() && body.back() != '\n') body += '\n';
    if (out_path.empty()) {
        std::cout << body;
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "cannot open " << out_path << " for writing\n";
        return 1;
    }
    out << body;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact mod-2 Hecke computations at levels 1, 3 and 5"};
    app.require_subcommand(1);

    std::string gen_name;
    int64_t gen_prec = 64;
    int64_t gen_level = 0;
    std::string gen_out;
    CLI::App* gen = app.add_subcommand("gen", "print a generator q-expansion");
    gen->add_option("--name", gen_name, "delta, f3 or f5")->required();
    gen->add_option("--prec", gen_prec, "number of coefficients kept (default 64)");
    gen->add_option("--level", gen_level, "must agree with the name if given");
    gen->add_option("--out", gen_out, "write to a file instead of stdout");

    std::string v_suite = "all";
    std::string v_format = "text";
    std::string v_out;
    bool v_no_cache = false;
    hecke_f2::VerifyOptions vopt;
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", v_suite,
                       "tables, recurrences, series, tangent, relations or all");
    verify->add_option("--level", vopt.level, "restrict to one level (0 = all)");
    verify->add_option("--degree", vopt.degree, "base degree bound of the window");
    verify->add_option("--prec", vopt.prec,
                       "q-expansion precision (0 = derive from the degree)");
    verify->add_option("--nmax", vopt.nmax, "size of the generator-power family");
    verify->add_option("--series-degree", vopt.series_degree,
                       "extraction bound for the level-1 series");
    verify->add_option("--format", v_format, "text, json or csv");
    verify->add_option("--out", v_out, "write the report to a file");
    verify->add_flag("--no-cache", v_no_cache, "skip the generator disk cache");

    int64_t c_level = 0;
    std::string c_format = "text";
    std::string c_out;
    CLI::App* classes =
        app.add_subcommand("classes", "print the Frobenius class tables");
    classes->add_option("--level", c_level, "3, 5 or 0 for both");
    classes->add_option("--format", c_format, "text or json");
    classes->add_option("--out", c_out, "write to a file instead of stdout");

    std::string t_format = "text";
    std::string t_out;
    CLI::App* tangent =
        app.add_subcommand("tangent", "print the constraint-system nullity table");
    tangent->add_option("--format", t_format, "text or json");
    tangent->add_option("--out", t_out, "write to a file instead of stdout");

    int64_t s_level = 3;
    int64_t s_degree = 64;
    std::string s_name;
    std::string s_out;
    CLI::App* space =
        app.add_subcommand("space", "dump a distinguished subspace as CSV");
    space->add_option("--level", s_level, "1, 3 or 5")->required();
    space->add_option("--name", s_name, "k, old, vnew or new")->required();
    space->add_option("--degree", s_degree, "degree bound of the window (default 64)");
    space->add_option("--out", s_out, "write to a file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            int64_t level = 0;
            if (gen_name == "delta")
                level = 1;
            else if (gen_name == "f3")
                level = 3;
            else if (gen_name == "f5")
                level = 5;
            else {
                std::cerr << "unknown generator name: " << gen_name << "\n";
                return 1;
            }
            if (gen_level != 0 && gen_level != level) {
                std::cerr << "generator " << gen_name << " lives at level " << level
                          << ", not " << gen_level << "\n";
                return 1;
            }
            if (gen_prec < 1) {
                std::cerr << "prec must be positive\n";
                return 1;
            }
            hecke_f2::QExpansion f = hecke_f2::gen_qexp(level, gen_prec);
            return emit(hecke_f2::to_f2qser(f, gen_name, level), gen_out);
        }

        if (verify->parsed()) {
            vopt.use_cache = !v_no_cache;
            hecke_f2::Report rep = hecke_f2::run_suite(v_suite, vopt);
            std::string text;
            if (v_format == "text")
                text = hecke_f2::render_text(rep);
            else if (v_format == "json")
                text = hecke_f2::render_json(rep);
            else if (v_format == "csv")
                text = hecke_f2::render_csv(rep);
            else {
                std::cerr << "unknown format: " << v_format << "\n";
                return 1;
            }
            if (int rc = emit(text, v_out)) return rc;
            return rep.ok() ? 0 : 1;
        }

        if (classes->parsed()) {
            if (c_level != 0 && c_level != 3 && c_level != 5) {
                std::cerr << "classes are tabulated at levels 3 and 5\n";
                return 1;
            }
            std::string text;
            if (c_format == "text") {
                if (c_level == 0 || c_level == 3) text += hecke_f2::class_table_text(3);
                if (c_level == 0) text += "\n";
                if (c_level == 0 || c_level == 5) text += hecke_f2::class_table_text(5);
            } else if (c_format == "json") {
                if (c_level != 0) {
                    text = hecke_f2::class_table_json(c_level).dump(2);
                } else {
                    nlohmann::ordered_json j;
                    j["level3"] = hecke_f2::class_table_json(3);
                    j["level5"] = hecke_f2::class_table_json(5);
                    text = j.dump(2);
                }
            } else {
                std::cerr << "unknown format: " << c_format << "\n";
                return 1;
            }
            return emit(text, c_out);
        }

        if (tangent->parsed()) {
            std::string text;
            if (t_format == "text")
                text = hecke_f2::tangent_table_text();
            else if (t_format == "json")
                text = hecke_f2::tangent_table_json().dump(2);
            else {
                std::cerr << "unknown format: " << t_format << "\n";
                return 1;
            }
            return emit(text, t_out);
        }

        if (space->parsed()) {
            if (s_degree < 8) {
                std::cerr << "degree bound must be at least 8\n";
                return 1;
            }
            hecke_f2::PolyAlgebra alg = hecke_f2::make_algebra(s_level, s_degree);
            hecke_f2::FormSpace sp;
            if (s_name == "k")
                sp = hecke_f2::k_space(alg);
            else if (s_name == "old")
                sp = hecke_f2::old_space(alg).space;
            else if (s_name == "vnew")
                sp = hecke_f2::vnew_space(alg);
            else if (s_name == "new")
                sp = hecke_f2::new_space(alg);
            else {
                std::cerr << "unknown space name: " << s_name << "\n";
                return 1;
            }
            return emit(hecke_f2::dump_space_csv(sp), s_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
