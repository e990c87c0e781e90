#include "strel/cli.hpp"

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "strel/io.hpp"
#include "strel/verify.hpp"

namespace strel {

namespace {

std::string shape_str(const Shape& s) {
    std::string t = "[";
    for (std::size_t i = 0; i < s.exps.size(); ++i) {
        if (i) t += ",";
        t += std::to_string(s.exps[i]);
    }
    return t + "]";
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open output file \"" + path + "\"");
    f << text;
}

struct Opts {
    std::uint64_t p = 2;
    unsigned n = 2;
    std::string group = "cyclic:2";
    unsigned i = 1;
    std::string file_a;
    std::string file_b;
    std::string out_path;
    std::uint64_t seed = kDefaultSeed;
    unsigned budget = kDefaultBudget;
    std::string suite = "all";
    std::string format = "text";
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{
        "strel: exact modular representation theory over Z/p^n and the relative stable "
        "category"};
    app.name("strel");
    app.require_subcommand(1);

    Opts o;
    int rc = 0;

    auto add_ring = [&](CLI::App* s) {
        s->add_option("--p", o.p, "prime p")->required();
        s->add_option("--n", o.n, "chain length n of Z/p^n")->required();
        s->add_option("--group", o.group, "group token, e.g. cyclic:2")->required();
    };
    auto add_out = [&](CLI::App* s) {
        s->add_option("--out", o.out_path, "write to this file instead of stdout");
    };
    auto add_search = [&](CLI::App* s) {
        s->add_option("--seed", o.seed, "seed for randomized search");
        s->add_option("--budget", o.budget, "iteration budget for randomized search");
    };

    // ---- construct ------------------------------------------------------
    CLI::App* con = app.add_subcommand("construct", "build a module and emit its module file");
    con->require_subcommand(1);
    auto add_build = [&](CLI::App* s, const std::function<GModule()>& build) {
        add_out(s);
        s->callback([&o, build, &out] { emit(write_module(build()), o.out_path, out); });
    };

    {
        CLI::App* s = con->add_subcommand("trivial", "trivial module 1_m (default m = n)");
        add_ring(s);
        CLI::Option* oi = s->add_option("--i", o.i, "level m");
        add_build(s, [&o, oi] {
            RingSpec R = RingSpec::make(o.p, o.n);
            unsigned m = oi->count() ? o.i : o.n;
            return trivial_module(R, FiniteGroup::parse(o.group), m);
        });
    }
    {
        CLI::App* s = con->add_subcommand("regular", "group algebra A_m (default m = n)");
        add_ring(s);
        CLI::Option* oi = s->add_option("--i", o.i, "level m");
        add_build(s, [&o, oi] {
            RingSpec R = RingSpec::make(o.p, o.n);
            unsigned m = oi->count() ? o.i : o.n;
            return regular_module(R, FiniteGroup::parse(o.group), m);
        });
    }
    {
        CLI::App* s = con->add_subcommand("W", "cosyzygy module W_i");
        add_ring(s);
        s->add_option("--i", o.i, "index i")->required();
        add_build(s, [&o] {
            return cosyzygy_w(RingSpec::make(o.p, o.n), FiniteGroup::parse(o.group), o.i).w;
        });
    }
    {
        CLI::App* s = con->add_subcommand("induce", "induced module on the file's shape");
        s->add_option("file", o.file_a, "module file")->required();
        add_build(s, [&o] {
            GModule M = read_module_file(o.file_a);
            return induce_shape(M.ring, M.group, M.level, M.shape);
        });
    }
    {
        CLI::App* s = con->add_subcommand("tensor", "tensor product of two module files");
        s->add_option("a", o.file_a, "left module file")->required();
        s->add_option("b", o.file_b, "right module file")->required();
        add_build(s, [&o] {
            return tensor_g(read_module_file(o.file_a), read_module_file(o.file_b));
        });
    }
    {
        CLI::App* s = con->add_subcommand("dual", "dual module");
        s->add_option("file", o.file_a, "module file")->required();
        add_build(s, [&o] { return dual_g(read_module_file(o.file_a)); });
    }
    {
        CLI::App* s = con->add_subcommand("suspend", "suspension (cokernel of the unit)");
        s->add_option("file", o.file_a, "module file")->required();
        add_build(s, [&o] { return suspend(read_module_file(o.file_a)).sigma; });
    }
    {
        CLI::App* s = con->add_subcommand("cone", "cone of the base-change unit at level i");
        s->add_option("file", o.file_a, "module file")->required();
        s->add_option("--i", o.i, "base-change level")->required();
        add_build(s, [&o] { return cone(bc_unit(read_module_file(o.file_a), o.i)).cone; });
    }
    {
        CLI::App* s = con->add_subcommand("base-change", "base change to level i");
        s->add_option("file", o.file_a, "module file")->required();
        s->add_option("--i", o.i, "target level")->required();
        add_build(s, [&o] { return base_change(read_module_file(o.file_a), o.i); });
    }
    {
        CLI::App* s = con->add_subcommand("mult", "multiplicity functor P_i");
        s->add_option("file", o.file_a, "module file")->required();
        s->add_option("--i", o.i, "drop exponents <= i")->required();
        add_build(s, [&o] { return mult_functor(read_module_file(o.file_a), o.i); });
    }
    {
        CLI::App* s = con->add_subcommand("F", "level-raising functor F on a level-1 module");
        s->add_option("file", o.file_a, "module file")->required();
        add_build(s, [&o] { return functor_f(read_module_file(o.file_a)); });
    }

    // ---- op ---------------------------------------------------------------
    CLI::App* opv = app.add_subcommand("op", "predicates and operators on module files");
    opv->require_subcommand(1);
    {
        CLI::App* s = opv->add_subcommand("restrict", "print the underlying shape");
        s->add_option("file", o.file_a, "module file")->required();
        s->callback([&] {
            GModule M = read_module_file(o.file_a);
            out << "level " << M.level << " shape " << shape_str(M.shape) << "\n";
        });
    }
    {
        CLI::App* s = opv->add_subcommand("is-wp", "weak projectivity via the trace test");
        s->add_option("file", o.file_a, "module file")->required();
        s->callback([&] {
            StableVerdict v = is_weakly_projective(read_module_file(o.file_a));
            out << (v.weakly_projective ? "yes\n" : "no\n");
            rc = v.weakly_projective ? 0 : 1;
        });
    }
    {
        CLI::App* s = opv->add_subcommand("is-iso", "exact isomorphism test");
        s->add_option("a", o.file_a, "left module file")->required();
        s->add_option("b", o.file_b, "right module file")->required();
        add_search(s);
        s->callback([&] {
            IsoResult r = is_isomorphic(read_module_file(o.file_a), read_module_file(o.file_b),
                                        o.seed, o.budget);
            out << (r.status == IsoStatus::Yes
                        ? "yes\n"
                        : (r.status == IsoStatus::No ? "no\n" : "unknown\n"));
            rc = r.status == IsoStatus::Yes ? 0 : 1;
        });
    }
    {
        CLI::App* s = opv->add_subcommand("stably-iso", "stable isomorphism test");
        s->add_option("a", o.file_a, "left module file")->required();
        s->add_option("b", o.file_b, "right module file")->required();
        add_search(s);
        s->callback([&] {
            StableIsoResult r = stably_isomorphic(read_module_file(o.file_a),
                                                  read_module_file(o.file_b), o.seed, o.budget);
            out << (r.status == IsoStatus::Yes
                        ? "yes\n"
                        : (r.status == IsoStatus::No ? "no\n" : "unknown\n"));
            rc = r.status == IsoStatus::Yes ? 0 : 1;
        });
    }
    {
        CLI::App* s = opv->add_subcommand("component", "component obstruction at level i");
        s->add_option("file", o.file_a, "module file")->required();
        s->add_option("--i", o.i, "component index")->required();
        add_out(s);
        s->callback([&] {
            GModule Y = component_obstruction(read_module_file(o.file_a), o.i);
            bool zero = is_weakly_projective(Y).weakly_projective;
            out << "shape " << shape_str(Y.shape) << (zero ? "; stably zero\n" : "; nonzero\n");
            if (!o.out_path.empty()) write_module_file(Y, o.out_path);
        });
    }
    {
        CLI::App* s = opv->add_subcommand("residue", "residue-field model at level i");
        s->add_option("file", o.file_a, "module file")->required();
        s->add_option("--i", o.i, "component index")->required();
        add_out(s);
        s->callback([&] {
            GModule Y = residue_model(read_module_file(o.file_a), o.i);
            out << "shape " << shape_str(Y.shape) << "\n";
            if (!o.out_path.empty()) write_module_file(Y, o.out_path);
        });
    }

    // ---- verify -----------------------------------------------------------
    {
        CLI::App* s = app.add_subcommand("verify", "run a verification suite");
        s->add_option("--suite", o.suite, "suite id or \"all\"");
        s->add_option("--p", o.p, "prime p");
        s->add_option("--n", o.n, "chain length n");
        s->add_option("--group", o.group, "group token");
        add_search(s);
        s->add_option("--format", o.format, "text | machine");
        add_out(s);
        s->callback([&] {
            if (o.format != "text" && o.format != "machine")
                throw ParseError("unknown format \"" + o.format + "\"");
            SuiteRequest rq{o.p, o.n, o.group, o.seed, o.budget};
            std::vector<CheckReport> reps = run_suite(o.suite, rq);
            emit(o.format == "machine" ? machine_report(reps) : text_report(reps), o.out_path,
                 out);
            rc = all_pass(reps) ? 0 : 1;
        });
    }

    // ---- support ------------------------------------------------------------
    {
        CLI::App* s = app.add_subcommand("support", "print the support of a module file");
        s->add_option("file", o.file_a, "module file")->required();
        s->callback([&] {
            SupportSet sup = support(read_module_file(o.file_a));
            out << sup.str() << (sup.exact ? " (exact)\n" : " (coarse)\n");
        });
    }

    // ---- primes ---------------------------------------------------------------
    {
        CLI::App* s = app.add_subcommand("primes", "list the spectrum points for R_n G");
        add_ring(s);
        s->callback([&] {
            std::vector<PrimeDescriptor> pts =
                spc_points(RingSpec::make(o.p, o.n), FiniteGroup::parse(o.group));
            out << pts.size() << " points\n";
            for (const PrimeDescriptor& d : pts) {
                out << "P_" << d.i << " = thick tensor ideal generated by {";
                bool first = true;
                for (unsigned j = 1; j <= o.n; ++j) {
                    if (j == d.i) continue;
                    out << (first ? " " : ", ") << "W_" << j;
                    first = false;
                }
                out << (first ? "}" : " }") << "\n";
            }
        });
    }

    try {
        std::vector<const char*> argv;
        argv.push_back("strel");
        for (const std::string& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConstraintError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return rc;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace strel
