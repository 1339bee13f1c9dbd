// Command-line front end for the mixt library.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mixt/core.hpp"
#include "mixt/crosslingual.hpp"
#include "mixt/dates.hpp"
#include "mixt/descriptors.hpp"
#include "mixt/gazetteer.hpp"
#include "mixt/keywords.hpp"
#include "mixt/langid.hpp"
#include "mixt/names.hpp"
#include "mixt/nomenclature.hpp"
#include "mixt/pipeline.hpp"
#include "mixt/report.hpp"
#include "mixt/store.hpp"

namespace {

using json = nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mixt::ResourceError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string doc_id_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

mixt::Document make_doc(const std::string& path, const std::string& lang,
                        const std::optional<mixt::CalendarDate>& ref) {
  mixt::Document d;
  d.id = doc_id_of(path);
  d.text = read_file(path);
  d.language = lang.empty() ? "und" : lang;
  d.reference_date = ref;
  d.source = path;
  return d;
}

std::optional<mixt::CalendarDate> parse_ref_date(const std::string& s) {
  if (s.empty()) return std::nullopt;
  int y = 0, m = 0, d = 0;
  char a = 0, b = 0;
  std::istringstream in(s);
  in >> y >> a >> m >> b >> d;
  if (!in || a != '-' || b != '-' || !mixt::valid_day_month(d, m, y))
    throw mixt::UsageError("bad reference date, expected YYYY-MM-DD: " + s);
  return mixt::CalendarDate{y, m, d};
}

void print_annotations(const std::string& doc_id,
                       const std::vector<mixt::Annotation>& anns) {
  std::cout << mixt::export_standoff(doc_id, anns);
}

mixt::SparseVector parse_vector_fields(const std::vector<std::string>& fields,
                                       std::size_t from, const std::string& space) {
  mixt::SparseVector v(space);
  for (std::size_t i = from; i < fields.size(); ++i) {
    auto eq = fields[i].rfind('=');
    if (eq == std::string::npos)
      throw mixt::ResourceError("expected dim=weight, got: " + fields[i]);
    v.add(fields[i].substr(0, eq), std::stod(fields[i].substr(eq + 1)));
  }
  return v;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

mixt::FacetedRepresentation facets_from_json(const json& j) {
  mixt::FacetedRepresentation rep;
  for (auto& [facet, dims] : j.items()) {
    mixt::SparseVector v(facet);
    for (auto& [dim, w] : dims.items()) v.add(dim, w.get<double>());
    rep.set_facet(facet, std::move(v));
  }
  return rep;
}

struct ClusterFile {
  std::string language;
  std::vector<mixt::Cluster> clusters;
};

ClusterFile load_cluster_file(const std::string& path) {
  json j = json::parse(read_file(path));
  ClusterFile out;
  out.language = j.at("language").get<std::string>();
  for (const auto& c : j.at("clusters")) {
    mixt::Cluster cl;
    cl.cluster_id = c.at("cluster_id").get<std::int64_t>();
    if (c.contains("members"))
      cl.members = c.at("members").get<std::vector<std::string>>();
    if (c.contains("title_doc")) cl.title_doc = c.at("title_doc").get<std::string>();
    cl.representation = facets_from_json(c.at("facets"));
    out.clusters.push_back(std::move(cl));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multilingual information extraction toolkit"};
  app.require_subcommand(1);

  std::string g_lang, g_display_lang = "en", g_config;
  app.add_option("--config", g_config, "pipeline config file")->envname("MIXT_CONFIG");
  app.add_option("--lang", g_lang, "document language code");
  app.add_option("--display-lang", g_display_lang, "display language code");

  // langid
  auto* sc_langid = app.add_subcommand("langid", "guess document languages");
  std::vector<std::string> li_profiles, li_docs;
  std::string li_train_lang, li_train_out;
  sc_langid->add_option("--profile", li_profiles, "trained profile file");
  sc_langid->add_option("--train-lang", li_train_lang, "train a profile for this code");
  sc_langid->add_option("--out", li_train_out, "profile output path (training)");
  sc_langid->add_option("docs", li_docs, "document or corpus files")->required();

  // geotag
  auto* sc_geo = app.add_subcommand("geotag", "recognize place names");
  std::string geo_gaz, geo_stop, geo_rules, geo_resolution = "place";
  std::vector<std::string> geo_docs;
  sc_geo->add_option("--gazetteer", geo_gaz)->required();
  sc_geo->add_option("--stoplist", geo_stop);
  sc_geo->add_option("--suffix-rules", geo_rules);
  sc_geo->add_option("--resolution", geo_resolution)
      ->check(CLI::IsMember({"place", "country"}));
  sc_geo->add_option("docs", geo_docs)->required();

  // products
  auto* sc_prod = app.add_subcommand("products", "recognize product terms");
  std::string prod_dict, prod_stop, prod_level = "code";
  std::vector<std::string> prod_docs;
  sc_prod->add_option("--dict", prod_dict)->required();
  sc_prod->add_option("--stoplist", prod_stop);
  sc_prod->add_option("--level", prod_level)->check(CLI::IsMember({"code", "supergroup"}));
  sc_prod->add_option("docs", prod_docs)->required();

  // dates
  auto* sc_dates = app.add_subcommand("dates", "recognize and normalize dates");
  std::string dates_params, dates_ref;
  std::vector<std::string> dates_docs;
  sc_dates->add_option("--params", dates_params)->required();
  sc_dates->add_option("--ref", dates_ref, "reference date YYYY-MM-DD");
  sc_dates->add_option("docs", dates_docs)->required();

  // names
  auto* sc_names = app.add_subcommand("names", "recognize person names");
  std::string names_cues, names_db;
  bool names_update = false;
  std::vector<std::string> names_docs;
  sc_names->add_option("--cues", names_cues)->required();
  sc_names->add_option("--db", names_db);
  sc_names->add_flag("--update-db", names_update, "write merged variants back");
  sc_names->add_option("docs", names_docs)->required();

  // keywords
  auto* sc_kw = app.add_subcommand("keywords", "extract keywords");
  std::string kw_ref, kw_stop;
  std::size_t kw_k = 20, kw_summary = 0;
  std::vector<std::string> kw_docs;
  sc_kw->add_option("--ref", kw_ref)->required();
  sc_kw->add_option("--stopwords", kw_stop)->required();
  sc_kw->add_option("-k", kw_k);
  sc_kw->add_option("--summary", kw_summary, "also print N summary sentences");
  sc_kw->add_option("docs", kw_docs)->required();

  // descriptors
  auto* sc_desc = app.add_subcommand("descriptors", "train or assign subject descriptors");
  auto* sc_desc_train = sc_desc->add_subcommand("train");
  std::string dt_manifest, dt_stop, dt_out;
  sc_desc_train->add_option("--manifest", dt_manifest)->required();
  sc_desc_train->add_option("--stopwords", dt_stop)->required();
  sc_desc_train->add_option("--out", dt_out)->required();
  auto* sc_desc_assign = sc_desc->add_subcommand("assign");
  std::string da_profiles, da_stop;
  std::size_t da_k = 8;
  std::vector<std::string> da_docs;
  sc_desc_assign->add_option("--profiles", da_profiles)->required();
  sc_desc_assign->add_option("--stopwords", da_stop);
  sc_desc_assign->add_option("-k", da_k);
  sc_desc_assign->add_option("docs", da_docs)->required();
  sc_desc->require_subcommand(1);

  // cluster
  auto* sc_cluster = app.add_subcommand("cluster", "agglomerative document clustering");
  double cl_threshold = 0.5;
  std::string cl_vectors;
  sc_cluster->add_option("--threshold", cl_threshold);
  sc_cluster->add_option("vectors", cl_vectors, "TSV: doc_id, then dim=weight fields")
      ->required();

  // xlink
  auto* sc_xlink = app.add_subcommand("xlink", "link clusters across languages");
  std::string xl_weights, xl_a, xl_b;
  sc_xlink->add_option("--weights", xl_weights);
  sc_xlink->add_option("clusters-a", xl_a)->required();
  sc_xlink->add_option("clusters-b", xl_b)->required();

  // mate
  auto* sc_mate = app.add_subcommand("mate", "detect translation pairs");
  std::string mate_weights, mate_a, mate_b;
  sc_mate->add_option("--weights", mate_weights);
  sc_mate->add_option("docs-a", mate_a)->required();
  sc_mate->add_option("docs-b", mate_b)->required();

  // ingest
  auto* sc_ingest = app.add_subcommand("ingest", "add records to a store");
  std::string in_store;
  std::vector<std::string> in_records;
  sc_ingest->add_option("--store", in_store)->required();
  sc_ingest->add_option("records", in_records, "files of serialized record lines")
      ->required();

  // query
  auto* sc_query = app.add_subcommand("query", "search a store");
  std::string q_store, q_prefix, q_supergroup, q_country, q_from, q_to, q_language;
  std::int64_t q_alias = -1, q_descriptor = -1;
  sc_query->add_option("--store", q_store)->required();
  sc_query->add_option("--product-prefix", q_prefix);
  sc_query->add_option("--supergroup", q_supergroup);
  sc_query->add_option("--country", q_country);
  sc_query->add_option("--date-from", q_from);
  sc_query->add_option("--date-to", q_to);
  sc_query->add_option("--alias", q_alias);
  sc_query->add_option("--descriptor", q_descriptor);
  sc_query->add_option("--language", q_language);

  // report
  auto* sc_report = app.add_subcommand("report", "render annotation results");
  std::string rp_standoff, rp_text, rp_html, rp_geojson, rp_gaz, rp_dict;
  sc_report->add_option("--standoff", rp_standoff)->required();
  sc_report->add_option("--text", rp_text, "original document file");
  sc_report->add_option("--html", rp_html, "HTML output path");
  sc_report->add_option("--geojson", rp_geojson, "GeoJSON output path");
  sc_report->add_option("--gazetteer", rp_gaz);
  sc_report->add_option("--dict", rp_dict);

  // annotate
  auto* sc_annotate = app.add_subcommand("annotate", "run the full pipeline");
  std::string an_store, an_out_dir, an_ref;
  std::vector<std::string> an_docs;
  sc_annotate->add_option("--store", an_store, "ingest records into this store");
  sc_annotate->add_option("--out-dir", an_out_dir, "stand-off TSV output directory");
  sc_annotate->add_option("--ref", an_ref, "reference date YYYY-MM-DD");
  sc_annotate->add_option("docs", an_docs)->required();

  // global options (--lang, --config, --display-lang) may appear after the
  // subcommand name
  for (auto* sub : app.get_subcommands(nullptr)) {
    sub->fallthrough();
    for (auto* nested : sub->get_subcommands(nullptr)) nested->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sc_langid) {
      if (!li_train_lang.empty()) {
        if (li_train_out.empty() || li_docs.size() != 1)
          throw mixt::UsageError("training needs --out and exactly one corpus file");
        auto p = mixt::train_profile(read_file(li_docs[0]), li_train_lang);
        std::ofstream out(li_train_out);
        if (!out) throw mixt::ResourceError("cannot write " + li_train_out);
        mixt::save_profile(p, out);
        return 0;
      }
      if (li_profiles.empty()) throw mixt::UsageError("need --profile files");
      std::vector<mixt::LanguageProfile> profiles;
      for (const auto& path : li_profiles) {
        std::ifstream in(path);
        if (!in) throw mixt::ResourceError("cannot open " + path);
        profiles.push_back(mixt::load_profile(in));
      }
      for (const auto& path : li_docs) {
        auto r = mixt::identify(read_file(path), profiles);
        std::cout << doc_id_of(path) << '\t' << r.language << '\t' << r.score << '\n';
      }
      return 0;
    }

    if (*sc_geo) {
      auto gaz = mixt::load_gazetteer(geo_gaz);
      mixt::GeoStopList stop;
      if (!geo_stop.empty()) stop = mixt::load_geostop_list(geo_stop, g_lang);
      mixt::SuffixRuleSet rules;
      if (!geo_rules.empty()) rules = mixt::load_suffix_rules(geo_rules, g_lang);
      for (const auto& path : geo_docs) {
        auto doc = make_doc(path, g_lang, std::nullopt);
        auto anns = mixt::recognize_places(doc, gaz, stop, rules);
        print_annotations(doc.id, anns);
        auto res = geo_resolution == "country" ? mixt::GeoResolution::country
                                               : mixt::GeoResolution::place;
        // stdout stays a clean stand-off table; the vector goes to stderr
        auto vec = mixt::country_vector(anns, res);
        for (const auto& [dim, w] : vec.entries())
          std::cerr << "# " << dim << '\t' << w << '\n';
      }
      return 0;
    }

    if (*sc_prod) {
      auto dict = mixt::load_product_dictionary(prod_dict);
      mixt::ProductStopList stop;
      if (!prod_stop.empty()) stop = mixt::load_product_stoplist(prod_stop, g_lang);
      for (const auto& path : prod_docs) {
        auto doc = make_doc(path, g_lang, std::nullopt);
        auto anns = mixt::recognize_products(doc, dict, stop);
        print_annotations(doc.id, anns);
        auto level = prod_level == "supergroup" ? mixt::ProductLevel::supergroup
                                                : mixt::ProductLevel::code;
        auto vec = mixt::product_vector(anns, level);
        for (const auto& [dim, w] : vec.entries())
          std::cerr << "# " << dim << '\t' << w << '\n';
      }
      return 0;
    }

    if (*sc_dates) {
      auto params = mixt::load_date_parameters(dates_params);
      auto ref = parse_ref_date(dates_ref);
      for (const auto& path : dates_docs) {
        auto doc = make_doc(path, g_lang, ref);
        print_annotations(doc.id, mixt::parse_dates(doc, params, ref));
      }
      return 0;
    }

    if (*sc_names) {
      auto cues = mixt::load_cue_lexicon(names_cues, g_lang);
      mixt::NameDatabase db;
      if (!names_db.empty()) {
        std::ifstream in(names_db);
        if (in) db = mixt::NameDatabase::load(in);
      }
      for (const auto& path : names_docs) {
        auto doc = make_doc(path, g_lang, std::nullopt);
        print_annotations(doc.id, mixt::recognize_names(doc, cues, db));
      }
      if (names_update && !names_db.empty()) {
        std::ofstream out(names_db);
        if (!out) throw mixt::ResourceError("cannot write " + names_db);
        db.save(out);
      }
      return 0;
    }

    if (*sc_kw) {
      auto ref = mixt::load_reference_list(kw_ref, g_lang);
      auto stop = mixt::load_stopwords(kw_stop);
      for (const auto& path : kw_docs) {
        auto doc = make_doc(path, g_lang, std::nullopt);
        auto kws = mixt::extract_keywords(doc, ref, stop, kw_k);
        for (const auto& kw : kws)
          std::cout << doc.id << '\t' << kw.term << '\t' << kw.keyness << '\t' << kw.tf
                    << '\n';
        if (kw_summary > 0)
          for (const auto& s : mixt::summarize(doc, kws, kw_summary))
            std::cout << "# " << doc.text.substr(s.offset, s.length) << '\n';
      }
      return 0;
    }

    if (*sc_desc_train) {
      std::vector<mixt::TrainingDocument> training;
      std::ifstream mf(dt_manifest);
      if (!mf) throw mixt::ResourceError("cannot open " + dt_manifest);
      std::string line;
      while (std::getline(mf, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_tabs(line);
        if (fields.size() != 2)
          throw mixt::ResourceError("manifest line needs 'path\\tids': " + line);
        mixt::TrainingDocument td;
        td.doc = make_doc(fields[0], g_lang, std::nullopt);
        std::istringstream ids(fields[1]);
        std::string id;
        while (std::getline(ids, id, ',')) td.descriptor_ids.insert(std::stoll(id));
        training.push_back(std::move(td));
      }
      auto profiles = mixt::train_profiles(training, mixt::load_stopwords(dt_stop));
      std::ofstream out(dt_out);
      if (!out) throw mixt::ResourceError("cannot write " + dt_out);
      mixt::save_profiles(profiles, out);
      return 0;
    }

    if (*sc_desc_assign) {
      std::ifstream in(da_profiles);
      if (!in) throw mixt::ResourceError("cannot open " + da_profiles);
      auto profiles = mixt::load_profiles(in);
      std::set<std::string> stop;
      if (!da_stop.empty()) stop = mixt::load_stopwords(da_stop);
      for (const auto& path : da_docs) {
        auto doc = make_doc(path, g_lang, std::nullopt);
        for (const auto& [id, score] : mixt::assign(doc, profiles, da_k, stop).ranked)
          std::cout << doc.id << '\t' << id << '\t' << score << '\n';
      }
      return 0;
    }

    if (*sc_cluster) {
      std::ifstream in(cl_vectors);
      if (!in) throw mixt::ResourceError("cannot open " + cl_vectors);
      std::vector<std::pair<std::string, mixt::SparseVector>> docs;
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_tabs(line);
        docs.emplace_back(fields[0], parse_vector_fields(fields, 1, "keyword"));
      }
      for (const auto& c : mixt::cluster(docs, cl_threshold)) {
        std::cout << c.cluster_id << '\t' << c.title_doc << '\t';
        for (std::size_t i = 0; i < c.members.size(); ++i)
          std::cout << (i ? "," : "") << c.members[i];
        std::cout << '\n';
      }
      return 0;
    }

    if (*sc_xlink) {
      mixt::WeightConfig w;
      if (!xl_weights.empty()) w = mixt::load_weight_config(xl_weights);
      auto a = load_cluster_file(xl_a);
      auto b = load_cluster_file(xl_b);
      std::map<std::string, std::vector<mixt::Cluster>> by_lang;
      by_lang[a.language] = a.clusters;
      by_lang[b.language] = b.clusters;
      for (const auto& link : mixt::link_clusters(by_lang, w))
        std::cout << link.source_language << ':' << link.source << '\t'
                  << link.target_language << ':' << link.target << '\t' << link.score
                  << '\n';
      return 0;
    }

    if (*sc_mate) {
      mixt::WeightConfig w;
      if (!mate_weights.empty()) w = mixt::load_weight_config(mate_weights);
      auto parse_docs = [](const std::string& path) {
        std::vector<std::tuple<std::string, std::size_t, mixt::FacetedRepresentation>> out;
        for (const auto& d : json::parse(read_file(path)))
          out.emplace_back(d.at("id").get<std::string>(), d.at("length").get<std::size_t>(),
                           facets_from_json(d.at("facets")));
        return out;
      };
      auto docs_a = parse_docs(mate_a);
      auto docs_b = parse_docs(mate_b);
      for (const auto& [id_a, len_a, rep_a] : docs_a) {
        std::string best;
        double best_score = -1.0;
        for (const auto& [id_b, len_b, rep_b] : docs_b) {
          double s = mixt::detect_translation(rep_a, len_a, rep_b, len_b, w);
          if (s > best_score) {
            best_score = s;
            best = id_b;
          }
        }
        std::cout << id_a << '\t' << best << '\t' << best_score << '\n';
      }
      return 0;
    }

    if (*sc_ingest) {
      mixt::Store store(in_store);
      for (const auto& path : in_records) {
        std::ifstream in(path);
        if (!in) throw mixt::ResourceError("cannot open " + path);
        std::string line;
        while (std::getline(in, line)) {
          if (line.empty()) continue;
          store.ingest(mixt::parse_record(line));
        }
      }
      std::cout << store.size() << " records\n";
      return 0;
    }

    if (*sc_query) {
      mixt::Store store(q_store);
      mixt::Query q;
      if (!q_prefix.empty()) q.product_code_prefix = q_prefix;
      if (!q_supergroup.empty()) q.supergroup = q_supergroup;
      if (!q_country.empty()) q.country = q_country;
      if (!q_from.empty()) q.date_from = q_from;
      if (!q_to.empty()) q.date_to = q_to;
      if (q_alias >= 0) q.alias_id = q_alias;
      if (q_descriptor >= 0) q.descriptor_id = q_descriptor;
      if (!q_language.empty()) q.language = q_language;
      for (const auto& id : store.query(q)) std::cout << id << '\n';
      return 0;
    }

    if (*sc_report) {
      std::string doc_id;
      auto anns = mixt::parse_standoff(read_file(rp_standoff), &doc_id);
      mixt::DisplayResources res;
      std::optional<mixt::Gazetteer> gaz;
      std::optional<mixt::ProductDictionary> dict;
      if (!rp_gaz.empty()) {
        gaz = mixt::load_gazetteer(rp_gaz);
        res.gazetteer = &*gaz;
      }
      if (!rp_dict.empty()) {
        dict = mixt::load_product_dictionary(rp_dict);
        res.products = &*dict;
      }
      if (!rp_html.empty()) {
        if (rp_text.empty()) throw mixt::UsageError("--html needs --text");
        std::ofstream out(rp_html);
        if (!out) throw mixt::ResourceError("cannot write " + rp_html);
        out << mixt::report_html(doc_id, read_file(rp_text), anns, g_display_lang, res);
      }
      if (!rp_geojson.empty()) {
        std::vector<mixt::Annotation> places;
        for (const auto& a : anns)
          if (a.kind == mixt::AnnotationKind::place) places.push_back(a);
        std::ofstream out(rp_geojson);
        if (!out) throw mixt::ResourceError("cannot write " + rp_geojson);
        out << mixt::report_geojson(places);
      }
      if (rp_html.empty() && rp_geojson.empty())
        throw mixt::UsageError("need --html or --geojson");
      return 0;
    }

    if (*sc_annotate) {
      if (g_config.empty()) throw mixt::UsageError("annotate needs --config");
      mixt::Pipeline pipeline(mixt::PipelineConfig::load(g_config));
      std::optional<mixt::Store> store;
      if (!an_store.empty()) store.emplace(an_store);
      auto ref = parse_ref_date(an_ref);
      std::size_t failed = 0;
      for (const auto& path : an_docs) {
        auto result = pipeline.annotate(make_doc(path, g_lang, ref));
        if (!result) {
          ++failed;
          continue;
        }
        std::cout << mixt::serialize_record(result->record) << '\n';
        std::string standoff = mixt::export_standoff(result->doc.id, result->annotations);
        if (!an_out_dir.empty()) {
          auto out_path =
              std::filesystem::path(an_out_dir) / (result->doc.id + ".standoff.tsv");
          std::ofstream out(out_path);
          if (!out) throw mixt::ResourceError("cannot write " + out_path.string());
          out << standoff;
        }
        if (store) store->ingest(result->record);
      }
      if (failed == an_docs.size()) return 2;
      return failed > 0 ? 3 : 0;
    }
  } catch (const mixt::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const mixt::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
