// Copyright 2026 The p2v authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// p2v: phoneme-to-viseme mapping toolkit.
//
// Machine-readable output (CSV, map files, transcripts) goes to stdout;
// commentary and the resolved-configuration echo go to stderr.
// Exit codes: 0 ok, 2 usage error, 3 data/format error, 4 internal error.

#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "p2v/alignment.hpp"
#include "p2v/channel.hpp"
#include "p2v/derivation.hpp"
#include "p2v/errors.hpp"
#include "p2v/stats.hpp"
#include "p2v/transcript.hpp"
#include "p2v/version.hpp"
#include "p2v/viseme_map.hpp"
#include "../src/util.hpp"

namespace {

using namespace p2v;

struct GlobalOptions {
  std::string data_dir;
  std::string inventory_path;
  bool quiet = false;
};

std::string resolve_data_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("P2V_DATA_DIR")) return env;
#ifdef P2V_DEFAULT_DATA_DIR
  return P2V_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

void echo_config(const GlobalOptions& global, const std::string& line) {
  if (!global.quiet) std::cerr << "# config: " << line << '\n';
}

std::string resolve_inventory_path(const GlobalOptions& global) {
  if (!global.inventory_path.empty()) return global.inventory_path;
  return resolve_data_dir(global.data_dir) + "/inventories/beep.inv";
}

PhonemeInventory load_inventory(const GlobalOptions& global) {
  return PhonemeInventory::parse(
      util::read_file(resolve_inventory_path(global)));
}

// A map argument may name a catalog entry or point at a .map file.
VisemeMap load_map_by_name(const GlobalOptions& global, const std::string& name,
                           const PhonemeInventory& inventory) {
  if (name.find('/') != std::string::npos ||
      (name.size() > 4 && name.substr(name.size() - 4) == ".map"))
    return VisemeMap::parse(util::read_file(name), inventory);
  std::string maps_dir = resolve_data_dir(global.data_dir) + "/maps";
  return VisemeMap::parse(util::read_file(maps_dir + "/" + name + ".map"),
                          inventory);
}

std::vector<Alignment> align_transcripts(const Transcript& ref,
                                         const Transcript& hyp,
                                         const AlignCosts& costs) {
  if (ref.utterances.size() != hyp.utterances.size())
    throw P2vError(ErrorCode::LabelMismatch,
                   "ref and hyp have different utterance counts");
  std::vector<Alignment> alignments;
  alignments.reserve(ref.utterances.size());
  for (std::size_t u = 0; u < ref.utterances.size(); ++u)
    alignments.push_back(align(ref.utterances[u], hyp.utterances[u], costs));
  return alignments;
}

std::vector<std::string> confusion_labels(const PhonemeInventory& inventory,
                                          const Transcript& ref,
                                          const Transcript& hyp) {
  std::set<std::string> seen;
  for (const auto& utt : ref.utterances) seen.insert(utt.begin(), utt.end());
  for (const auto& utt : hyp.utterances) seen.insert(utt.begin(), utt.end());
  std::vector<std::string> labels;
  for (const PhonemeSymbol& s : inventory.symbols())
    if (seen.count(s.name)) labels.push_back(s.name);
  // Labels outside the inventory follow in sorted order.
  for (const std::string& label : seen)
    if (!inventory.contains(label)) labels.push_back(label);
  return labels;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phoneme-to-viseme mapping toolkit"};
  app.set_version_flag(
      "--version", std::string("p2v ") + kToolVersion + " (catalog " +
                       kCatalogVersion + ", q-table " + kQTableVersion + ")");
  GlobalOptions global;
  app.add_option("--data-dir", global.data_dir,
                 "data directory (default: $P2V_DATA_DIR or built-in)");
  app.add_option("--inventory", global.inventory_path,
                 "phoneme inventory file (default: bundled beep.inv)");
  app.add_flag("--quiet", global.quiet, "suppress the stderr config echo");
  std::uint64_t seed_value = 0;
  CLI::Option* seed_opt = app.add_option(
      "--seed", seed_value, "override the channel seed (simulate, pipeline)");
  app.fallthrough();  // global flags may follow the subcommand name
  app.require_subcommand(1);

  // ---- maps ------------------------------------------------------------
  CLI::App* maps = app.add_subcommand("maps", "literature map catalog");
  maps->require_subcommand(1);
  CLI::App* maps_list = maps->add_subcommand("list", "list catalog maps");
  CLI::App* maps_show = maps->add_subcommand("show", "print one map file");
  std::string show_name;
  maps_show->add_option("name", show_name)->required();
  CLI::App* maps_cf = maps->add_subcommand("cf", "print a compression factor");
  std::string cf_name;
  maps_cf->add_option("name", cf_name)->required();
  CLI::App* maps_pair = maps->add_subcommand("pair", "pair vowel+consonant maps");
  std::string pair_vowel, pair_consonant;
  maps_pair->add_option("vowel", pair_vowel)->required();
  maps_pair->add_option("consonant", pair_consonant)->required();

  // ---- transcribe --------------------------------------------------------
  CLI::App* transcribe =
      app.add_subcommand("transcribe", "words -> phonemes [-> visemes]");
  std::string tr_words, tr_dict, tr_map;
  transcribe->add_option("--words", tr_words, "word transcript")->required();
  transcribe->add_option("--dict", tr_dict, "pronunciation dictionary")
      ->required();
  transcribe->add_option("--map", tr_map,
                         "apply this map and emit visemes instead");

  // ---- score -------------------------------------------------------------
  CLI::App* score_cmd = app.add_subcommand("score", "align and score hyp vs ref");
  std::string sc_ref, sc_hyp, sc_level = "phoneme", sc_costs = "htk";
  std::string sc_confusion_out;
  score_cmd->add_option("--ref", sc_ref)->required();
  score_cmd->add_option("--hyp", sc_hyp)->required();
  score_cmd->add_option("--level", sc_level, "word|phoneme|viseme");
  score_cmd->add_option("--costs", sc_costs, "htk|unit");
  score_cmd->add_option("--confusion-out", sc_confusion_out,
                        "write the confusion matrix CSV here");

  // ---- derive ------------------------------------------------------------
  CLI::App* derive_cmd =
      app.add_subcommand("derive", "derive a speaker-dependent map");
  std::string dv_confusion, dv_variant = "B1", dv_out;
  long long dv_min_confusion = 1;
  derive_cmd->add_option("--confusion", dv_confusion)->required();
  derive_cmd->add_option("--variant", dv_variant, "B1|B2|B3|B4");
  derive_cmd->add_option("--min-confusion", dv_min_confusion,
                         "edge threshold (default 1)");
  derive_cmd->add_option("--out", dv_out, "output map file ('-' for stdout)");

  // ---- compare -----------------------------------------------------------
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "Friedman + critical difference report");
  std::string cp_scores, cp_out;
  double cp_alpha = 0.05;
  compare_cmd->add_option("--scores", cp_scores)->required();
  compare_cmd->add_option("--alpha", cp_alpha, "0.05 or 0.10");
  compare_cmd->add_option("--out", cp_out, "report file (default stdout)");

  // ---- simulate ----------------------------------------------------------
  CLI::App* sim_cmd = app.add_subcommand("simulate", "run a noisy channel");
  std::string sm_channel, sm_ref, sm_out;
  sim_cmd->add_option("--channel", sm_channel)->required();
  sim_cmd->add_option("--ref", sm_ref)->required();
  sim_cmd->add_option("--out", sm_out, "output transcript ('-' for stdout)");

  // ---- pipeline ----------------------------------------------------------
  CLI::App* pipe_cmd = app.add_subcommand(
      "pipeline", "simulate -> score -> derive -> compare, one CSV row per "
                  "(speaker, variant)");
  std::string pl_channel, pl_ref, pl_variants = "B1,B2,B3,B4", pl_maps_out;
  int pl_speakers = 1;
  double pl_alpha = 0.05;
  pipe_cmd->add_option("--channel", pl_channel)->required();
  pipe_cmd->add_option("--ref", pl_ref, "phoneme-level reference transcript")
      ->required();
  pipe_cmd->add_option("--speakers", pl_speakers, "number of simulated speakers");
  pipe_cmd->add_option("--variants", pl_variants, "comma list of B1..B4");
  pipe_cmd->add_option("--alpha", pl_alpha, "0.05 or 0.10");
  pipe_cmd->add_option("--maps-out", pl_maps_out,
                       "directory for the derived map files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*maps_list) {
      PhonemeInventory inventory = load_inventory(global);
      echo_config(global, "maps list inventory=" + resolve_inventory_path(global));
      MapCatalog catalog = MapCatalog::load(
          resolve_data_dir(global.data_dir) + "/maps", inventory);
      std::cout << "name,role,visemes,phonemes,cf,year\n";
      for (const auto& entry : catalog.entries()) {
        std::cout << entry.name << ',' << entry.role << ','
                  << entry.map.viseme_count() << ',' << entry.map.phoneme_count()
                  << ',' << util::format_fixed(compression_factor(entry.map), 4)
                  << ',' << entry.year << '\n';
      }
    } else if (*maps_show) {
      PhonemeInventory inventory = load_inventory(global);
      echo_config(global, "maps show name=" + show_name);
      std::cout << load_map_by_name(global, show_name, inventory).serialize();
    } else if (*maps_cf) {
      PhonemeInventory inventory = load_inventory(global);
      echo_config(global, "maps cf name=" + cf_name + " inventory=" + resolve_inventory_path(global));
      VisemeMap map = load_map_by_name(global, cf_name, inventory);
      std::cout << util::format_fixed(compression_factor(map), 4) << '\n';
    } else if (*maps_pair) {
      PhonemeInventory inventory = load_inventory(global);
      echo_config(global,
                  "maps pair vowel=" + pair_vowel + " consonant=" + pair_consonant);
      VisemeMap vowels = load_map_by_name(global, pair_vowel, inventory);
      VisemeMap consonants = load_map_by_name(global, pair_consonant, inventory);
      std::cout << pair_maps(vowels, consonants, inventory).serialize();
    } else if (*transcribe) {
      PhonemeInventory inventory = load_inventory(global);
      echo_config(global, "transcribe words=" + tr_words + " dict=" + tr_dict +
                              (tr_map.empty() ? "" : " map=" + tr_map));
      PronunciationDict dict =
          PronunciationDict::parse(util::read_file(tr_dict), inventory);
      Transcript words =
          Transcript::parse(util::read_file(tr_words), Level::word);
      Transcript phonemes = words_to_phonemes(words, dict);
      if (tr_map.empty()) {
        std::cout << phonemes.serialize();
      } else {
        VisemeMap map = load_map_by_name(global, tr_map, inventory);
        std::cout << apply_map(map, phonemes).serialize();
      }
    } else if (*score_cmd) {
      auto level = level_from_name(sc_level);
      if (!level) throw P2vError(ErrorCode::FormatError, "bad --level " + sc_level);
      AlignCosts costs;
      if (sc_costs == "htk") costs = AlignCosts::htk();
      else if (sc_costs == "unit") costs = AlignCosts::unit();
      else throw P2vError(ErrorCode::FormatError, "bad --costs " + sc_costs);
      echo_config(global, "score ref=" + sc_ref + " hyp=" + sc_hyp +
                              " level=" + sc_level + " costs=" + sc_costs);
      Transcript ref = Transcript::parse(util::read_file(sc_ref), *level);
      Transcript hyp = Transcript::parse(util::read_file(sc_hyp), *level);
      std::vector<Alignment> alignments = align_transcripts(ref, hyp, costs);
      AlignmentStats stats = score(alignments);
      std::cout << "utterance_id,N,H,S,D,I\n";
      for (std::size_t u = 0; u < alignments.size(); ++u) {
        const Alignment& a = alignments[u];
        long long n = a.hits() + a.substitutions() + a.deletions();
        std::cout << (u + 1) << ',' << n << ',' << a.hits() << ','
                  << a.substitutions() << ',' << a.deletions() << ','
                  << a.insertions() << '\n';
      }
      std::cout << "TOTAL," << stats.n << ',' << stats.hits << ','
                << stats.substitutions << ',' << stats.deletions << ','
                << stats.insertions << ','
                << util::format_fixed(stats.correctness(), 4) << ','
                << util::format_fixed(stats.accuracy(), 4) << '\n';
      std::cerr << "C=" << util::format_fixed(stats.correctness(), 4)
                << " A=" << util::format_fixed(stats.accuracy(), 4) << '\n';
      if (!sc_confusion_out.empty()) {
        PhonemeInventory inventory = load_inventory(global);
        std::vector<std::string> labels = confusion_labels(inventory, ref, hyp);
        ConfusionMatrix m = confusion_from_alignments(alignments, labels);
        util::write_file(sc_confusion_out, m.to_csv());
      }
    } else if (*derive_cmd) {
      PhonemeInventory inventory = load_inventory(global);
      auto variant = variant_from_name(dv_variant);
      if (!variant)
        throw P2vError(ErrorCode::FormatError, "bad --variant " + dv_variant);
      echo_config(global, "derive confusion=" + dv_confusion + " variant=" +
                              dv_variant + " min-confusion=" +
                              std::to_string(dv_min_confusion) +
                              " inventory=" + resolve_inventory_path(global));
      ConfusionMatrix m =
          ConfusionMatrix::from_csv(util::read_file(dv_confusion));
      DerivationConfig cfg{*variant, inventory, dv_min_confusion};
      DerivationLog log;
      VisemeMap map = derive(m, cfg, &log);
      for (const MergeRecord& r : log.merges) {
        std::cerr << "relax: " << r.phoneme << " -> " << r.target_label
                  << " (confusion " << r.target_score;
        if (!r.runner_up_label.empty())
          std::cerr << " vs " << r.runner_up_score << " for "
                    << r.runner_up_label;
        std::cerr << ")\n";
      }
      std::ostringstream out;
      out << "# variant: " << variant_name(*variant) << '\n'
          << "# confusion: " << confusion_digest(m) << '\n'
          << "# tie-break: " << kTieBreakVersion << '\n'
          << map.serialize();
      if (dv_out.empty() || dv_out == "-") std::cout << out.str();
      else util::write_file(dv_out, out.str());
    } else if (*compare_cmd) {
      echo_config(global, "compare scores=" + cp_scores + " alpha=" +
                              util::format_fixed(cp_alpha, 2));
      ScoreGrid grid = ScoreGrid::from_csv(util::read_file(cp_scores));
      ComparisonReport report = compare_methods(grid, cp_alpha);
      std::ostringstream out;
      out << "method,mean_rank\n";
      for (std::size_t i = 0; i < report.methods.size(); ++i)
        out << report.methods[i] << ','
            << util::format_fixed(report.mean_ranks[i], 4) << '\n';
      out << "friedman_statistic," << util::format_fixed(report.statistic, 6)
          << '\n';
      out << "friedman_p," << report.p_value << '\n';
      out << "critical_difference," << util::format_fixed(report.critical_difference, 6)
          << '\n';
      out << "alpha," << util::format_fixed(report.alpha, 2) << '\n';
      auto groups = report.groups();
      for (std::size_t g = 0; g < groups.size(); ++g) {
        out << "group" << (g + 1) << ',';
        for (std::size_t i = 0; i < groups[g].size(); ++i) {
          if (i) out << ' ';
          out << groups[g][i];
        }
        out << '\n';
      }
      if (cp_out.empty()) std::cout << out.str();
      else util::write_file(cp_out, out.str());
    } else if (*sim_cmd) {
      ChannelModel model = ChannelModel::parse(util::read_file(sm_channel));
      if (seed_opt->count() > 0) model.seed = seed_value;
      echo_config(global, "simulate channel=" + sm_channel + " ref=" + sm_ref +
                              " seed=" + std::to_string(model.seed));
      Transcript ref = Transcript::parse(util::read_file(sm_ref), Level::phoneme);
      Transcript hyp = simulate(ref, model);
      if (sm_out.empty() || sm_out == "-") std::cout << hyp.serialize();
      else util::write_file(sm_out, hyp.serialize());
    } else if (*pipe_cmd) {
      PhonemeInventory inventory = load_inventory(global);
      ChannelModel base = ChannelModel::parse(util::read_file(pl_channel));
      if (seed_opt->count() > 0) base.seed = seed_value;
      echo_config(global, "pipeline channel=" + pl_channel + " ref=" + pl_ref +
                              " speakers=" + std::to_string(pl_speakers) +
                              " variants=" + pl_variants +
                              " seed=" + std::to_string(base.seed) +
                              " inventory=" + resolve_inventory_path(global));
      Transcript ref = Transcript::parse(util::read_file(pl_ref), Level::phoneme);
      std::vector<Variant> variants;
      {
        std::string token;
        std::istringstream ss(pl_variants);
        while (std::getline(ss, token, ',')) {
          auto v = variant_from_name(util::trim(token));
          if (!v) throw P2vError(ErrorCode::FormatError, "bad variant " + token);
          variants.push_back(*v);
        }
      }
      if (variants.empty())
        throw P2vError(ErrorCode::FormatError, "no variants given");
      std::cout << "speaker,variant,C,A,CF\n";
      std::vector<std::vector<double>> c_grid;
      for (int s = 1; s <= pl_speakers; ++s) {
        ChannelModel model = base;
        model.seed = base.seed + 1000003ULL * static_cast<std::uint64_t>(s - 1);
        Transcript hyp = simulate(ref, model);
        std::vector<Alignment> phoneme_aligned =
            align_transcripts(ref, hyp, AlignCosts::htk());
        std::vector<std::string> labels = confusion_labels(inventory, ref, hyp);
        ConfusionMatrix confusion =
            confusion_from_alignments(phoneme_aligned, labels);
        std::vector<double> c_row;
        for (Variant v : variants) {
          DerivationConfig cfg{v, inventory, 1};
          VisemeMap map = derive(confusion, cfg);
          double cf = compression_factor(map);
          Transcript ref_vis = apply_map(map, ref);
          Transcript hyp_vis = apply_map(map, hyp);
          AlignmentStats stats =
              score(align_transcripts(ref_vis, hyp_vis, AlignCosts::htk()));
          std::cout << "sp" << s << ',' << variant_name(v) << ','
                    << util::format_fixed(stats.correctness(), 4) << ','
                    << util::format_fixed(stats.accuracy(), 4) << ','
                    << util::format_fixed(cf, 4) << '\n';
          c_row.push_back(stats.correctness());
          if (!pl_maps_out.empty())
            util::write_file(pl_maps_out + "/sp" + std::to_string(s) + "-" +
                                 variant_name(v) + ".map",
                             map.serialize());
        }
        c_grid.push_back(std::move(c_row));
      }
      if (pl_speakers >= 2 && variants.size() >= 2) {
        ScoreGrid grid;
        for (Variant v : variants) grid.methods.push_back(variant_name(v));
        for (int s = 1; s <= pl_speakers; ++s)
          grid.datasets.push_back("sp" + std::to_string(s));
        grid.values = c_grid;
        ComparisonReport report = compare_methods(grid, pl_alpha);
        std::cout << '\n' << "method,mean_rank\n";
        for (std::size_t i = 0; i < report.methods.size(); ++i)
          std::cout << report.methods[i] << ','
                    << util::format_fixed(report.mean_ranks[i], 4) << '\n';
        std::cout << "friedman_statistic,"
                  << util::format_fixed(report.statistic, 6) << '\n'
                  << "friedman_p," << report.p_value << '\n'
                  << "critical_difference,"
                  << util::format_fixed(report.critical_difference, 6) << '\n';
      } else {
        std::cerr << "compare skipped: needs >= 2 speakers and >= 2 variants\n";
      }
    }
  } catch (const P2vError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
