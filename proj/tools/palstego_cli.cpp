// palstego: hide bit strings in the palette order of indexed images.
//
// Exit codes:
//   0  success
//   1  usage, I/O or other error
//   2  message exceeds the cover's capacity
//   3  image cannot be decoded or encoded
//   4  duplicate palette colors in --strict mode
//   5  stego palette does not match its recovered cover palette
//   6  framing or message length error during extraction
//   7  one-time-pad key error

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "palstego/palstego.hpp"

namespace fs = std::filesystem;
using namespace palstego;

namespace {

enum Exit : int {
  kOk = 0,
  kFailure = 1,
  kCapacity = 2,
  kCodec = 3,
  kDuplicate = 4,
  kMismatch = 5,
  kFraming = 6,
  kKey = 7,
};

struct Shape {
  std::size_t width = 0;
  std::size_t height = 0;
};

Shape parse_shape(const std::string& text) {
  const auto x = text.find_first_of("xX");
  try {
    if (x == std::string::npos) throw std::invalid_argument("no separator");
    std::size_t used = 0;
    Shape s{std::stoul(text.substr(0, x), &used), 0};
    if (used != x) throw std::invalid_argument("width");
    const std::string h = text.substr(x + 1);
    s.height = std::stoul(h, &used);
    if (used != h.size() || s.width == 0 || s.height == 0) throw std::invalid_argument("height");
    return s;
  } catch (const std::exception&) {
    throw Error("invalid shape '" + text + "', expected WxH");
  }
}

IdentityMode parse_identity(const std::string& s) {
  return s == "natural-sort" ? IdentityMode::NaturalSort : IdentityMode::FirstOccurrence;
}

Framing parse_framing(const std::string& s) {
  return s == "length-prefixed" ? Framing::LengthPrefixed : Framing::Raw;
}

std::optional<codecs::ImageFormat> format_option(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return codecs::parse_format(s);
}

otp::PadKey load_key(const std::string& path) {
  return otp::decode_key_file(codecs::read_file(path));
}

// Binary images use palette slot 0 for bit 0 and slot 1 for bit 1.
Message message_from_binary_image(const IndexedImage& img) {
  BinaryImage bin{img.width, img.height, {}};
  bin.bits.reserve(img.indices.size());
  for (auto i : img.indices) {
    if (i > 1) throw Error("binary image pixels must use palette slots 0 and 1 only");
    bin.bits.push_back(i == 1);
  }
  return pack_binary_image(bin);
}

IndexedImage binary_image_to_indexed(const BinaryImage& bin) {
  IndexedImage img{bin.width, bin.height, {}, {{255, 255, 255}, {0, 0, 0}}};
  img.indices.reserve(bin.bits.size());
  for (bool b : bin.bits) img.indices.push_back(b ? 1 : 0);
  return img;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

struct EmbedArgs {
  std::string cover, output, message, image, otp_key, in_format, out_format;
  std::string identity = "first-occurrence", framing = "raw";
  std::optional<std::size_t> bits;
  bool strict = false;
};

int cmd_embed(const EmbedArgs& a) {
  const auto cover = codecs::read_image(a.cover, format_option(a.in_format));

  Message msg;
  if (a.image.empty() && a.message.empty()) throw Error("embed needs --message FILE or --image FILE");
  if (!a.image.empty()) {
    msg = message_from_binary_image(codecs::read_image(a.image).image);
  } else {
    const auto bytes = codecs::read_file(a.message);
    msg = a.bits ? Message::from_bytes(bytes, *a.bits) : Message::from_bytes(bytes);
  }
  if (!a.otp_key.empty()) msg = otp::apply_pad(msg, load_key(a.otp_key));

  const StegoConfig cfg{parse_identity(a.identity), parse_framing(a.framing), a.strict};
  const IndexedImage stego = embed(cover.image, msg, cfg);
  const std::size_t n = stego.palette.size();
  const std::size_t framed =
      cfg.framing == Framing::Raw ? msg.size() : kLengthPrefixBits + msg.size();
  codecs::write_image(a.output, stego, format_option(a.out_format));
  std::cout << "embedded " << msg.size() << " message bits (" << framed << " framed) into " << n
            << " colors; capacity " << capacity(n) << " bits\n";
  return kOk;
}

struct ExtractArgs {
  std::string stego, output, otp_key, in_format;
  std::string identity = "first-occurrence", framing = "raw", shape;
  std::optional<std::size_t> bits;
  bool text = false;
};

int cmd_extract(const ExtractArgs& a) {
  const auto stego = codecs::read_image(a.stego, format_option(a.in_format));
  const StegoConfig cfg{parse_identity(a.identity), parse_framing(a.framing), false};

  std::optional<Shape> shape;
  if (!a.shape.empty()) shape = parse_shape(a.shape);
  std::optional<std::size_t> expected = a.bits;
  if (shape) expected = shape->width * shape->height;
  if (cfg.framing == Framing::Raw && !expected) {
    std::cerr << "palstego: raw framing needs --bits N or --shape WxH\n";
    return kFailure;
  }

  Message msg = extract(stego.image, cfg, expected);
  if (!a.otp_key.empty()) msg = otp::apply_pad(msg, load_key(a.otp_key));

  const fs::path out(a.output);
  if (a.text) {
    const std::string s = msg.to_string() + "\n";
    codecs::write_file(out, std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
  } else if (shape && codecs::parse_format(out.extension().string())) {
    codecs::write_image(out, binary_image_to_indexed(unpack_binary_image(msg, shape->width, shape->height)));
  } else {
    codecs::write_file(out, msg.to_bytes());
  }
  std::cout << "extracted " << msg.size() << " bits\n";
  return kOk;
}

int cmd_capacity(const std::string& path, const std::string& in_format) {
  const auto img = codecs::read_image(path, format_option(in_format));
  const std::size_t n = distinct_used_colors(img.image);
  std::cout << "palette_entries: " << img.image.palette.size() << "\n"
            << "colors: " << n << "\n"
            << "capacity_bits: " << capacity(n) << "\n";
  return kOk;
}

int cmd_inspect(const std::string& path, const std::string& in_format, bool natural_keys,
                bool render_hash_only, const std::string& identity) {
  const auto img = codecs::read_image(path, format_option(in_format));
  const std::string digest = hex64(render_digest(render(img.image)));
  if (render_hash_only) {
    std::cout << digest << "\n";
    return kOk;
  }
  std::cout << "format: " << codecs::format_name(img.format) << "\n"
            << "dimensions: " << img.image.width << "x" << img.image.height << "\n"
            << "palette_entries: " << img.image.palette.size() << "\n"
            << "colors: " << distinct_used_colors(img.image) << "\n"
            << "canonical: " << (is_canonical(img.image) ? "yes" : "no") << "\n"
            << "palette:\n";
  for (std::size_t i = 0; i < img.image.palette.size(); ++i) {
    const Rgb c = img.image.palette[i];
    std::cout << "  " << i << ": " << int{c.r} << " " << int{c.g} << " " << int{c.b};
    if (natural_keys) std::cout << " key=" << natural_key(c);
    std::cout << "\n";
  }
  try {
    const Permutation p = recover_permutation(img.image, parse_identity(identity));
    std::cout << "identity_mode: " << identity << "\n"
              << "permutation: " << p.to_string() << "\n"
              << "rank: " << rank(p) << "\n";
  } catch (const PaletteMismatchError& e) {
    std::cout << "identity_mode: " << identity << "\n"
              << "permutation: unavailable (" << e.what() << ")\n";
  }
  std::cout << "render_digest: " << digest << "\n";
  return kOk;
}

int cmd_negative(const std::string& in, const std::string& out, const std::string& in_format,
                 const std::string& out_format) {
  const auto img = codecs::read_image(in, format_option(in_format));
  codecs::write_image(out, negative(img.image), format_option(out_format));
  return kOk;
}

int cmd_keygen(std::size_t length, const std::string& out) {
  otp::PadKey key;
  if (const char* seed = std::getenv("PALSTEGO_SEED"); seed && *seed) {
    std::cerr << "palstego: PALSTEGO_SEED set, generating a reproducible TEST key\n";
    key = otp::keygen_seeded_for_testing(length, std::stoull(seed));
  } else {
    key = otp::keygen(length);
  }
  codecs::write_file(out, otp::encode_key_file(key));
  return kOk;
}

int run_guarded(const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const CapacityExceededError& e) {
    std::cerr << "palstego: capacity exceeded: " << e.what() << "\n";
    return kCapacity;
  } catch (const DuplicateColorError& e) {
    std::cerr << "palstego: duplicate colors: " << e.what() << "\n";
    return kDuplicate;
  } catch (const PaletteMismatchError& e) {
    std::cerr << "palstego: palette mismatch: " << e.what() << "\n";
    return kMismatch;
  } catch (const FramingError& e) {
    std::cerr << "palstego: framing error: " << e.what() << "\n";
    return kFraming;
  } catch (const LengthError& e) {
    std::cerr << "palstego: length error: " << e.what() << "\n";
    return kFraming;
  } catch (const codecs::IoError& e) {
    std::cerr << "palstego: " << e.what() << "\n";
    return kFailure;
  } catch (const CodecError& e) {
    std::cerr << "palstego: codec error: " << e.what() << "\n";
    return kCodec;
  } catch (const KeyFileError& e) {
    std::cerr << "palstego: key error: " << e.what() << "\n";
    return kKey;
  } catch (const LengthMismatchError& e) {
    std::cerr << "palstego: key error: " << e.what() << "\n";
    return kKey;
  } catch (const std::exception& e) {
    std::cerr << "palstego: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hide bit strings in the palette order of indexed images (PNG, GIF, PALIMG)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "palstego 1.0");

  const std::vector<std::string> identities = {"first-occurrence", "natural-sort"};
  const std::vector<std::string> framings = {"raw", "length-prefixed"};
  const std::vector<std::string> formats = {"png", "gif", "palimg"};

  EmbedArgs ea;
  auto* embed_cmd = app.add_subcommand("embed", "Embed a message into a cover image");
  embed_cmd->add_option("cover", ea.cover, "Cover image")->required()->check(CLI::ExistingFile);
  embed_cmd->add_option("output", ea.output, "Stego image to write")->required();
  auto* msg_opt = embed_cmd->add_option("--message", ea.message, "Message file (raw bytes, MSB first)")
                      ->check(CLI::ExistingFile);
  auto* img_opt = embed_cmd->add_option("--image", ea.image, "Binary image message (slot 0 = bit 0, slot 1 = bit 1)")
                      ->check(CLI::ExistingFile);
  msg_opt->excludes(img_opt);
  embed_cmd->add_option("--bits", ea.bits, "Use only the first N bits of --message")->needs(msg_opt);
  embed_cmd->add_option("--identity", ea.identity, "Identity ordering")->check(CLI::IsMember(identities));
  embed_cmd->add_option("--framing", ea.framing, "Message framing")->check(CLI::IsMember(framings));
  embed_cmd->add_flag("--strict", ea.strict, "Fail on duplicate palette colors instead of merging");
  embed_cmd->add_option("--otp", ea.otp_key, "Pad the message with this key file first")->check(CLI::ExistingFile);
  embed_cmd->add_option("--format", ea.out_format, "Output format override")->check(CLI::IsMember(formats));
  embed_cmd->add_option("--cover-format", ea.in_format, "Cover format override")->check(CLI::IsMember(formats));

  ExtractArgs xa;
  auto* extract_cmd = app.add_subcommand("extract", "Extract a message from a stego image");
  extract_cmd->add_option("stego", xa.stego, "Stego image")->required()->check(CLI::ExistingFile);
  extract_cmd->add_option("output", xa.output, "Where to write the message")->required();
  auto* bits_opt = extract_cmd->add_option("--bits", xa.bits, "Message length in bits");
  auto* shape_opt = extract_cmd->add_option("--shape", xa.shape, "Message is a WxH binary image");
  bits_opt->excludes(shape_opt);
  extract_cmd->add_option("--identity", xa.identity, "Identity ordering")->check(CLI::IsMember(identities));
  extract_cmd->add_option("--framing", xa.framing, "Message framing")->check(CLI::IsMember(framings));
  extract_cmd->add_option("--otp", xa.otp_key, "Remove this pad after extraction")->check(CLI::ExistingFile);
  extract_cmd->add_flag("--text", xa.text, "Write the bits as ASCII 0/1");
  extract_cmd->add_option("--format", xa.in_format, "Stego format override")->check(CLI::IsMember(formats));

  std::string cap_path, cap_format;
  auto* capacity_cmd = app.add_subcommand("capacity", "Print distinct colors and bit capacity");
  capacity_cmd->add_option("image", cap_path, "Image")->required()->check(CLI::ExistingFile);
  capacity_cmd->add_option("--format", cap_format, "Format override")->check(CLI::IsMember(formats));

  std::string ins_path, ins_format, ins_identity = "first-occurrence";
  bool ins_keys = false, ins_hash = false;
  auto* inspect_cmd = app.add_subcommand("inspect", "Describe an indexed image");
  inspect_cmd->add_option("image", ins_path, "Image")->required()->check(CLI::ExistingFile);
  inspect_cmd->add_flag("--natural-keys", ins_keys, "Show 65536R+256G+B next to each palette entry");
  inspect_cmd->add_flag("--render-hash", ins_hash, "Print only the digest of the rendered RGB image");
  inspect_cmd->add_option("--identity", ins_identity, "Identity ordering for the preview")
      ->check(CLI::IsMember(identities));
  inspect_cmd->add_option("--format", ins_format, "Format override")->check(CLI::IsMember(formats));

  std::string neg_in, neg_out, neg_in_format, neg_out_format;
  auto* negative_cmd = app.add_subcommand("negative", "Write the slot-reversed negative of a 256-color image");
  negative_cmd->add_option("input", neg_in, "Input image")->required()->check(CLI::ExistingFile);
  negative_cmd->add_option("output", neg_out, "Output image")->required();
  negative_cmd->add_option("--input-format", neg_in_format, "Input format override")->check(CLI::IsMember(formats));
  negative_cmd->add_option("--format", neg_out_format, "Output format override")->check(CLI::IsMember(formats));

  std::size_t key_len = 0;
  std::string key_out;
  auto* keygen_cmd = app.add_subcommand("keygen", "Write a one-time-pad key file");
  keygen_cmd->add_option("length", key_len, "Key length in bits")->required();
  keygen_cmd->add_option("output", key_out, "Key file to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kFailure;
  }

  if (*embed_cmd) return run_guarded([&] { return cmd_embed(ea); });
  if (*extract_cmd) return run_guarded([&] { return cmd_extract(xa); });
  if (*capacity_cmd) return run_guarded([&] { return cmd_capacity(cap_path, cap_format); });
  if (*inspect_cmd) {
    return run_guarded([&] { return cmd_inspect(ins_path, ins_format, ins_keys, ins_hash, ins_identity); });
  }
  if (*negative_cmd) {
    return run_guarded([&] { return cmd_negative(neg_in, neg_out, neg_in_format, neg_out_format); });
  }
  if (*keygen_cmd) return run_guarded([&] { return cmd_keygen(key_len, key_out); });
  return kFailure;
}
