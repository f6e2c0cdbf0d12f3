#include "fohier/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <fstream>
#include <json.hpp>
#include <new>
#include <ostream>
#include <sstream>

#include "fohier/chains.hpp"
#include "fohier/corpus.hpp"
#include "fohier/enriched.hpp"
#include "fohier/errors.hpp"
#include "fohier/lang_file.hpp"
#include "fohier/oracle.hpp"

namespace fohier::cli {

  namespace {

    using Json = nlohmann::ordered_json;

    struct Caps {
      std::size_t max_monoid         = 512;
      std::size_t max_completion     = 4096;
      std::size_t max_junctures      = Limits{}.max_junctures;
      std::size_t max_witness_length = Limits{}.max_witness_length;
      std::size_t max_schemas        = Limits{}.max_schemas;
      std::size_t max_schema_pairs   = Limits{}.max_schema_pairs;
      std::size_t max_letters        = 2000;
      std::size_t oracle_budget      = GameBudget{}.max_nodes;

      DecideOptions decide() const {
        DecideOptions o;
        o.max_monoid                = max_monoid;
        o.max_completion            = max_completion;
        o.limits.max_junctures      = max_junctures;
        o.limits.max_witness_length = max_witness_length;
        o.limits.max_schemas        = max_schemas;
        o.limits.max_schema_pairs   = max_schema_pairs;
        return o;
      }
      EnrichedOptions enriched() const {
        EnrichedOptions o;
        o.decide      = decide();
        o.max_letters = max_letters;
        return o;
      }
      GameBudget budget() const {
        return GameBudget{oracle_budget};
      }
    };

    void add_caps(CLI::App* app, Caps& caps, bool saturation, bool oracle) {
      auto pos = CLI::PositiveNumber;
      app->add_option("--max-monoid", caps.max_monoid, "cap on syntactic and joint monoid size")
          ->check(pos)
          ->capture_default_str();
      if (saturation) {
        app->add_option("--max-completion", caps.max_completion, "cap on the alphabet completion")
            ->check(pos)
            ->capture_default_str();
        app->add_option("--max-junctures", caps.max_junctures, "cap on stored junctures per level")
            ->check(pos)
            ->capture_default_str();
        app->add_option("--max-witness-length", caps.max_witness_length, "cap on synthesized witness length")
            ->check(pos)
            ->capture_default_str();
        app->add_option("--max-schemas", caps.max_schemas, "cap on alternation schemas")
            ->check(pos)
            ->capture_default_str();
        app->add_option("--max-schema-pairs", caps.max_schema_pairs, "cap on schema pair checks")
            ->check(pos)
            ->capture_default_str();
        app->add_option("--max-letters", caps.max_letters, "cap on the well-formed alphabet (enriched)")
            ->check(pos)
            ->capture_default_str();
      }
      if (oracle) {
        app->add_option("--oracle-budget", caps.oracle_budget, "game search nodes")
            ->check(pos)
            ->capture_default_str();
      }
    }

    Json element_json(NamedElement const& e) {
      return Json{{"index", e.index}, {"name", e.name}};
    }

    std::string element_text(NamedElement const& e) {
      return "#" + std::to_string(e.index) + " [" + e.name + "]";
    }

    Json evidence_json(Evidence const& ev) {
      if (auto const* v = std::get_if<EquationViolation>(&ev)) {
        Json params = Json::object();
        for (auto const& [k, x] : v->parameters) {
          params[k] = element_json(x);
        }
        return Json{{"kind", "equation_violation"},
                    {"equation", v->equation},
                    {"parameters", params},
                    {"lhs", element_json(v->lhs)},
                    {"rhs", element_json(v->rhs)}};
      }
      if (auto const* c = std::get_if<ChainPair>(&ev)) {
        Json chain = Json::array();
        for (auto const& x : c->chain) {
          chain.push_back(element_json(x));
        }
        Json words = Json::array();
        for (auto const& w : c->witnesses) {
          words.push_back(c->alphabet.format(w));
        }
        return Json{{"kind", "chain_pair"},
                    {"direction", c->direction},
                    {"first", element_json(c->first)},
                    {"second", element_json(c->second)},
                    {"chain", chain},
                    {"derivation", c->derivation},
                    {"witnesses", words}};
      }
      auto const& cert = std::get<Certificate>(ev);
      return Json{{"kind", "certificate"}, {"checked", cert.checked}, {"note", cert.note}};
    }

    std::string yes_no(bool b) {
      return b ? "yes" : "no";
    }

    Dfa load(std::string const& path) {
      if (!std::filesystem::exists(path)) {
        throw InvalidArgument("cannot open " + path);
      }
      return load_language(path).dfa;
    }

    std::string letter_set_text(Completion const& c, Element s) {
      return format_letter_set(c.morphism.alph(s), c.morphism.alphabet);
    }

    std::string chain_text(Chain const& chain, Completion const* c) {
      std::string out;
      for (std::size_t i = 0; i < chain.size(); ++i) {
        out += i ? " " : "";
        if (c) {
          out += std::to_string(c->base[chain[i]]) + letter_set_text(*c, chain[i]);
        } else {
          out += std::to_string(chain[i]);
        }
      }
      return out;
    }

    void print_chains(std::ostream& out, ChainSet const& chains, Completion const& c, bool alph) {
      if (alph) {
        for (auto const& x : chains.chains()) {
          out << chain_text(x, &c) << "\n";
        }
      } else {
        for (auto const& x : project_chains(chains, c).chains()) {
          out << chain_text(x, nullptr) << "\n";
        }
      }
    }

    void print_junctures(std::ostream& out, JunctureSet const& j, Completion const& c, bool alph) {
      ChainSet decode(j.length() - 1, j.radix());
      for (auto id : j.maximal()) {
        auto const& x = j.juncture(id);
        out << chain_text({x.root}, alph ? &c : nullptr) << ":";
        for (std::size_t i = 0; i < x.chains.size(); ++i) {
          out << (i ? " |" : "") << " " << chain_text(decode.decode(x.chains[i]), alph ? &c : nullptr);
        }
        out << "\n";
      }
    }

    Direction direction_of(std::string const& cls) {
      if (cls == "sigma2") {
        return Direction::sigma2_from;
      }
      if (cls == "pi2") {
        return Direction::pi2_from;
      }
      throw InvalidArgument("separation is supported for sigma2 and pi2 only, not " + cls);
    }

  }  // namespace

  std::string report_text(Verdict const& v) {
    std::ostringstream out;
    out << "class: " << class_name(v.cls) << "\n";
    out << "signature: " << v.signature << "\n";
    out << "answer: " << yes_no(v.answer) << "\n";
    if (auto const* e = std::get_if<EquationViolation>(&v.evidence)) {
      out << "evidence: violation of " << e->equation << "\n";
      out << "violating tuple:";
      for (auto const& [k, x] : e->parameters) {
        out << " " << k << "=" << element_text(x);
      }
      out << "\n";
      out << "lhs: " << element_text(e->lhs) << "\n";
      out << "rhs: " << element_text(e->rhs) << "\n";
    } else if (auto const* c = std::get_if<ChainPair>(&v.evidence)) {
      out << "evidence: " << c->direction << " chain between accepting elements\n";
      out << "accepting pair: " << element_text(c->first) << " " << element_text(c->second) << "\n";
      out << "chain:";
      for (auto const& x : c->chain) {
        out << " " << element_text(x);
      }
      out << "\n";
      if (!c->derivation.empty()) {
        out << "derivation: " << c->derivation << "\n";
      }
      for (auto const& w : c->witnesses) {
        out << "witness: " << (w.empty() ? std::string("%e") : c->alphabet.format(w)) << "\n";
      }
    } else {
      auto const& cert = std::get<Certificate>(v.evidence);
      out << "evidence: " << cert.note << "\n";
      out << "instances checked: " << cert.checked << "\n";
    }
    if (v.separator_rank) {
      out << "separator rank: " << *v.separator_rank << "\n";
    }
    return out.str();
  }

  std::string report_json(Verdict const& v) {
    Json j{{"class", std::string(class_name(v.cls))},
           {"signature", v.signature},
           {"answer", yes_no(v.answer)},
           {"evidence", evidence_json(v.evidence)},
           {"bounds", Json{{"separator_rank", v.separator_rank ? Json(*v.separator_rank) : Json(nullptr)}}}};
    return j.dump(2) + "\n";
  }

  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantifier alternation levels of regular languages", "fohier"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "all subcommands");

    Caps                     caps;
    std::string              cls       = "sigma2";
    std::string              signature = "order";
    bool                     json      = false;
    std::string              expect;
    std::string              dump_wf;
    std::vector<std::string> files;
    auto const               classes = CLI::IsMember(
        {"sigma1", "pi1", "bsigma1", "sigma2", "pi2", "delta2", "bsigma2", "sigma3", "pi3", "delta3"});

    auto* decide_cmd = app.add_subcommand("decide", "membership of a language in a class");
    decide_cmd->add_option("--class", cls, "class")->required()->check(classes);
    decide_cmd->add_option("--signature", signature, "order or enriched")
        ->check(CLI::IsMember({"order", "enriched"}))
        ->capture_default_str();
    decide_cmd->add_flag("--json", json, "JSON output");
    decide_cmd->add_option("--expect", expect, "exit 1 unless the answer matches")
        ->check(CLI::IsMember({"yes", "no"}));
    decide_cmd->add_option("--dump-wf", dump_wf, "write the well-formed language (enriched)");
    decide_cmd->add_option("file", files, "language file")->required()->expected(1);
    add_caps(decide_cmd, caps, true, false);

    auto* separate_cmd = app.add_subcommand("separate", "separability of L1 from L2");
    separate_cmd->add_option("--class", cls, "sigma2 or pi2")
        ->check(CLI::IsMember({"sigma2", "pi2"}))
        ->capture_default_str();
    separate_cmd->add_option("--signature", signature, "order or enriched")
        ->check(CLI::IsMember({"order", "enriched"}))
        ->capture_default_str();
    separate_cmd->add_flag("--json", json, "JSON output");
    separate_cmd->add_option("--expect", expect, "exit 1 unless the answer matches")
        ->check(CLI::IsMember({"yes", "no"}));
    separate_cmd->add_option("files", files, "L1 L2")->required()->expected(2);
    add_caps(separate_cmd, caps, true, false);

    std::size_t n     = 2;
    bool        alph  = false;
    bool        junct = false;
    auto*       chains_cmd = app.add_subcommand("chains", "Sigma_2 chains of the syntactic morphism");
    chains_cmd->add_option("--n", n, "chain length")->check(CLI::Range(1, 8))->capture_default_str();
    chains_cmd->add_flag("--alph", alph, "annotate elements with their alphabet");
    chains_cmd->add_flag("--junctures", junct, "print maximal junctures instead of chains");
    chains_cmd->add_option("file", files, "language file")->required()->expected(1);
    add_caps(chains_cmd, caps, true, false);

    unsigned    level = 2, rank = 1;
    std::size_t maxlen = 4;
    std::string alphabet_chars = "ab";
    auto*       oracle_cmd     = app.add_subcommand("oracle", "brute force ground truth");
    oracle_cmd->require_subcommand(1);
    auto* ef_cmd = oracle_cmd->add_subcommand("ef", "w <~_i^k w' by the game");
    ef_cmd->add_option("--i", level, "level")->check(CLI::Range(1, 8))->capture_default_str();
    ef_cmd->add_option("--k", rank, "rounds")->check(CLI::Range(0, 3))->capture_default_str();
    ef_cmd->add_option("--alphabet", alphabet_chars, "letters, one character each")->capture_default_str();
    ef_cmd->add_option("words", files, "W1 W2")->required()->expected(2);
    add_caps(ef_cmd, caps, false, true);
    auto* brute_cmd = oracle_cmd->add_subcommand("chains", "chains witnessed by short words");
    brute_cmd->add_option("--i", level, "level")->check(CLI::Range(1, 8))->capture_default_str();
    brute_cmd->add_option("--n", n, "chain length")->check(CLI::Range(1, 8))->capture_default_str();
    brute_cmd->add_option("--k", rank, "rounds")->check(CLI::Range(0, 3))->capture_default_str();
    brute_cmd->add_option("--maxlen", maxlen, "word length bound")->capture_default_str();
    brute_cmd->add_flag("--alph", alph, "annotate elements with their alphabet");
    brute_cmd->add_option("file", files, "language file")->required()->expected(1);
    add_caps(brute_cmd, caps, false, true);
    brute_cmd->add_option("--max-completion", caps.max_completion, "cap on the alphabet completion")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* witness_cmd = app.add_subcommand(
        "witness", "words w1 <~ w2 with w1 in L1 and w2 in L2 (L2 defaults to the complement)");
    witness_cmd->add_option("--class", cls, "sigma2 or pi2")
        ->check(CLI::IsMember({"sigma2", "pi2"}))
        ->capture_default_str();
    witness_cmd->add_option("files", files, "L1 [L2]")->required()->expected(1, 2);
    add_caps(witness_cmd, caps, true, true);

    std::uint64_t seed = 1;
    std::size_t   count = 10, states = 4;
    std::string   out_dir;
    auto*         corpus_cmd = app.add_subcommand("corpus", "random minimal DFAs");
    corpus_cmd->add_option("--seed", seed, "generator seed")->capture_default_str();
    corpus_cmd->add_option("--count", count, "instances")->capture_default_str();
    corpus_cmd->add_option("--states", states, "state bound")->check(CLI::PositiveNumber)->capture_default_str();
    corpus_cmd->add_option("--alphabet", alphabet_chars, "letters, one character each")->capture_default_str();
    corpus_cmd->add_option("--out", out_dir, "write NNN.lang files here instead of stdout");

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (CLI::CallForHelp const& e) {
      app.exit(e, out, err);
      return exit_ok;
    } catch (CLI::CallForAllHelp const& e) {
      app.exit(e, out, err);
      return exit_ok;
    } catch (CLI::ParseError const& e) {
      err << "error: " << e.what() << "\n";
      return exit_usage;
    }

    auto finish = [&](Verdict const& v) {
      if (auto const* c = std::get_if<ChainPair>(&v.evidence); c && c->witnesses.empty()) {
        throw ResourceLimit("witness words exceed --max-witness-length");
      }
      out << (json ? report_json(v) : report_text(v));
      if (!expect.empty() && yes_no(v.answer) != expect) {
        err << "error: expected " << expect << ", got " << yes_no(v.answer) << "\n";
        return exit_expect;
      }
      return exit_ok;
    };

    try {
      if (*decide_cmd) {
        auto const l     = load(files[0]);
        auto const which = *parse_class(cls);
        if (signature == "enriched") {
          if (!dump_wf.empty()) {
            auto const wf = wf_language(transition_monoid(l.minimized(), caps.max_monoid), "L", caps.max_letters);
            std::ofstream f(dump_wf);
            if (!f) {
              throw InvalidArgument("cannot write " + dump_wf);
            }
            f << format_language(wf.dfa);
          }
          return finish(enriched_membership(l, which, caps.enriched()));
        }
        if (!dump_wf.empty()) {
          throw InvalidArgument("--dump-wf needs --signature enriched");
        }
        return finish(decide(l, which, caps.decide()));
      }
      if (*separate_cmd) {
        auto const l1  = load(files[0]);
        auto const l2  = load(files[1]);
        auto const dir = direction_of(cls);
        if (signature == "enriched") {
          return finish(enriched_separation(l1, l2, dir, caps.enriched()));
        }
        return finish(separation_sigma2(l1, l2, dir, caps.decide()));
      }
      if (*chains_cmd) {
        auto const m    = transition_monoid(load(files[0]).minimized(), caps.max_monoid);
        auto const c    = alphabet_completion(m, caps.max_completion);
        auto const js   = all_junctures(c.morphism, n, caps.decide().limits);
        auto const& top = *js[n - 1];
        out << "# fmt 1\n";
        out << "monoid: " << m.monoid.size() << " completion: " << c.morphism.monoid.size() << "\n";
        if (junct) {
          print_junctures(out, top, c, alph);
        } else {
          print_chains(out, chains_of_length(top), c, alph);
        }
        return exit_ok;
      }
      if (*ef_cmd) {
        auto const a = Alphabet::from_chars(alphabet_chars);
        bool const r = ef_leq(level, rank, a.parse_word(files[0]), a.parse_word(files[1]), caps.budget());
        out << (r ? "true" : "false") << "\n";
        return exit_ok;
      }
      if (*brute_cmd) {
        auto const m = transition_monoid(load(files[0]).minimized(), caps.max_monoid);
        auto const c = alphabet_completion(m, caps.max_completion);
        out << "# fmt 1\n";
        print_chains(out, brute_chain_set(c.morphism, level, n, rank, maxlen, caps.budget()), c, alph);
        return exit_ok;
      }
      if (*witness_cmd) {
        auto const l1 = load(files[0]);
        auto const l2 = files.size() > 1 ? load(files[1]) : complement(l1);
        auto const v  = separation_sigma2(l1, l2, direction_of(cls), caps.decide());
        if (v.answer) {
          out << "separable: yes\n";
          return exit_ok;
        }
        auto const& pair = std::get<ChainPair>(v.evidence);
        out << "separable: no\n";
        if (pair.witnesses.size() != 2) {
          throw ResourceLimit("witness words exceed --max-witness-length");
        }
        auto const& lo = pair.witnesses[0];
        auto const& hi = pair.witnesses[1];
        out << "w1: " << (lo.empty() ? std::string("%e") : pair.alphabet.format(lo)) << "\n";
        out << "w2: " << (hi.empty() ? std::string("%e") : pair.alphabet.format(hi)) << "\n";
        bool const game = ef_leq(2, 1, lo, hi, caps.budget());
        out << "game check w1 <~ w2 at level 2, rank 1: " << (game ? "holds" : "FAILS") << "\n";
        if (!game) {
          throw InternalInconsistency("synthesized witnesses fail the game check");
        }
        return exit_ok;
      }
      if (*corpus_cmd) {
        auto const a  = Alphabet::from_chars(alphabet_chars);
        auto const ds = corpus(seed, count, states, a);
        if (!out_dir.empty()) {
          std::filesystem::create_directories(out_dir);
        }
        for (std::size_t i = 0; i < ds.size(); ++i) {
          std::ostringstream name;
          name << std::setw(3) << std::setfill('0') << i << ".lang";
          if (out_dir.empty()) {
            out << "# instance " << i << "\n" << format_language(ds[i]) << "\n";
          } else {
            std::ofstream f(std::filesystem::path(out_dir) / name.str());
            f << format_language(ds[i]);
            if (!f) {
              throw InvalidArgument("cannot write " + name.str());
            }
          }
        }
        return exit_ok;
      }
    } catch (ResourceLimit const& e) {
      err << "error: resource limit: " << e.what() << "\n";
      return exit_resource;
    } catch (std::bad_alloc const&) {
      err << "error: resource limit: out of memory\n";
      return exit_resource;
    } catch (InternalInconsistency const& e) {
      err << "error: internal inconsistency: " << e.what() << "\n";
      return exit_internal;
    } catch (std::exception const& e) {
      err << "error: " << e.what() << "\n";
      return exit_usage;
    }
    return exit_usage;
  }

}  // namespace fohier::cli
