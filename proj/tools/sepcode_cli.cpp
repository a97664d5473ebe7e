#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "sepcode/codec.hpp"
#include "sepcode/generators.hpp"
#include "sepcode/graph_io.hpp"

using namespace sepcode;
namespace fs = std::filesystem;

namespace {

int exit_code(ErrorCode code) {
  switch (code) {
  case ErrorCode::ParseError: return 2;
  case ErrorCode::NotInClass: return 3;
  case ErrorCode::GenusTooLarge: return 4;
  default: return 1;
  }
}

std::vector<std::uint8_t> read_bytes(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::ParseError, "cannot open " + path);
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string &path, const std::vector<std::uint8_t> &bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    fail(ErrorCode::ParseError, "cannot write " + path);
  }
  out.write(reinterpret_cast<const char *>(bytes.data()), std::streamsize(bytes.size()));
}

// A file, or the *.graph files of a directory in name order.
std::vector<fs::path> graph_files(const std::string &input) {
  if (!fs::is_directory(input)) {
    return {input};
  }
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(input)) {
    if (entry.path().extension() == ".graph") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

EmbeddedGraph generate(const std::string &family, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  if (family == "triangulation") {
    return random_plane_triangulation(n, rng);
  }
  if (family == "planar") {
    return random_connected_planar(n, 0.5, rng);
  }
  if (family == "tree") {
    return random_tree(n, 5, rng);
  }
  if (family == "path") {
    return path_graph(n);
  }
  if (family == "cycle") {
    return cycle_graph(n);
  }
  if (family == "grid") {
    const auto side = std::size_t(std::ceil(std::sqrt(double(n))));
    return grid_graph(side, (n + side - 1) / side);
  }
  if (family == "torus") {
    return random_torus_triangulation(n, rng);
  }
  if (family == "k7") {
    return k7_torus();
  }
  fail(ErrorCode::ParseError, "unknown family " + family);
}

std::string csv_header() {
  return "file,n,cap,total_bits,bits_per_node,part_code_bits,size_bits,table_bits,rec_bits,fix_bits,"
         "label_bits,prefix_bits,overhead_per_node,encode_s";
}

std::string csv_row(const std::string &name, const CodecStats &s, double seconds) {
  std::ostringstream row;
  row << name << ',' << s.nodes << ',' << s.cap << ',' << s.total_bits << ',' << s.bits_per_node() << ','
      << s.part_code_bits << ',' << s.size_bits << ',' << s.table_bits << ',' << s.rec_bits << ',' << s.fix_bits
      << ',' << s.label_bits << ',' << s.prefix_bits << ','
      << double(s.total_bits - s.part_code_bits) / double(s.nodes) << ',' << seconds;
  return row.str();
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Separator-based compression of embedded planar graphs"};
  app.require_subcommand(1);

  std::string class_name = "planar";
  CodecConfig config;
  std::uint64_t seed = 1;
  std::string csv_path;

  auto add_codec_flags = [&](CLI::App *cmd) {
    cmd->add_option("--class", class_name, "Graph class: planar, plane-connected, forest5, triangulation");
    cmd->add_flag("--table-by-reference", config.table_by_reference, "Leave the table out of each container");
    cmd->add_option("--max-cap", config.max_cap, "Largest table cap")->check(CLI::Range(1, 64));
    cmd->add_option("--levels", config.literal_levels, "Literal separation levels before the cap level")
        ->check(CLI::Range(0, 7));
    cmd->add_flag("!--drop-labels", config.keep_labels, "Store the graph up to relabeling");
  };

  std::string input;
  std::string output;
  auto *enc = app.add_subcommand("encode", "Encode a graph file, or every .graph file of a directory");
  enc->add_option("input", input)->required();
  enc->add_option("-o,--output", output, "Container file, or directory for a corpus")->required();
  add_codec_flags(enc);

  auto *dec = app.add_subcommand("decode", "Decode a container to a graph file");
  dec->add_option("input", input)->required();
  dec->add_option("-o,--output", output)->required();
  dec->add_option("--max-cap", config.max_cap, "Largest table cap rebuilt for by-reference containers");

  std::string container;
  auto *ver = app.add_subcommand("verify", "Check that a container decodes to a graph");
  ver->add_option("graph", input)->required();
  ver->add_option("container", container)->required();
  ver->add_option("--max-cap", config.max_cap, "Largest table cap rebuilt for by-reference containers");

  std::string family;
  std::size_t n = 0;
  auto *gen = app.add_subcommand("gen", "Generate a graph: triangulation, planar, tree, path, cycle, grid, torus, k7");
  gen->add_option("family", family)->required();
  gen->add_option("n", n)->required();
  gen->add_option("--seed", seed);
  gen->add_option("-o,--output", output, "Output file (default stdout)");

  std::vector<std::string> corpus;
  auto *st = app.add_subcommand("stats", "Encode a corpus and report the bit breakdown as CSV");
  st->add_option("inputs", corpus, "Graph files or directories")->required();
  st->add_option("--csv", csv_path, "Write the CSV here instead of stdout");
  add_codec_flags(st);

  CLI11_PARSE(app, argc, argv);

  try {
    if (enc->parsed()) {
      const GraphClass &cls = graph_class(class_name);
      const auto files = graph_files(input);
      const bool corpus_mode = fs::is_directory(input);
      if (corpus_mode) {
        fs::create_directories(output);
      }
      for (const auto &file : files) {
        const EmbeddedGraph g = load_graph(file.string());
        const Encoded e = encode(g, cls, config);
        const std::string target = corpus_mode ? (fs::path(output) / file.stem()).string() + ".sctc" : output;
        write_bytes(target, container_bytes(e.bits));
        std::cout << file.string() << ": n=" << g.node_count() << " bits=" << e.stats.total_bits
                  << " bits/node=" << e.stats.bits_per_node() << '\n';
        if (corpus_mode && config.table_by_reference && &file == &files.front()) {
          const std::string table_path =
              (fs::path(output) / (cls.name + "-" + std::to_string(e.stats.cap) + ".sctb")).string();
          write_bytes(table_path, serialize_table(cached_table(cls, e.stats.cap, config.max_cap)).to_bytes());
          std::cout << "shared table: " << table_path << '\n';
        }
      }
    } else if (dec->parsed()) {
      DecodeOptions options;
      options.max_cap = config.max_cap;
      save_graph(output, decode(container_from_bytes(read_bytes(input)), options));
    } else if (ver->parsed()) {
      DecodeOptions options;
      options.max_cap = config.max_cap;
      const BitString bits = container_from_bytes(read_bytes(container));
      const EmbeddedGraph decoded = decode(bits, options);
      const EmbeddedGraph g = load_graph(input);
      const bool same = read_container_info(bits).keep_labels
                            ? labeled_equal(decoded, g)
                            : canonical_form(decoded).code == canonical_form(g).code;
      std::cout << (same ? "match" : "MISMATCH") << '\n';
      return same ? 0 : 1;
    } else if (gen->parsed()) {
      const EmbeddedGraph g = generate(family, n, seed);
      if (output.empty()) {
        write_graph(std::cout, g);
      } else {
        save_graph(output, g);
      }
    } else if (st->parsed()) {
      const GraphClass &cls = graph_class(class_name);
      std::ofstream file_out;
      if (!csv_path.empty()) {
        file_out.open(csv_path);
        if (!file_out) {
          fail(ErrorCode::ParseError, "cannot write " + csv_path);
        }
      }
      std::ostream &out = csv_path.empty() ? std::cout : file_out;
      out << csv_header() << '\n';
      for (const auto &in : corpus) {
        for (const auto &file : graph_files(in)) {
          const EmbeddedGraph g = load_graph(file.string());
          const auto start = std::chrono::steady_clock::now();
          const Encoded e = encode(g, cls, config);
          const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          out << csv_row(file.string(), e.stats, seconds) << '\n';
        }
      }
    }
  } catch (const Error &e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
