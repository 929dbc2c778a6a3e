#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace rcns::io {

namespace {

inline std::uint32_t rol(std::uint32_t x, int s) { return (x << s) | (x >> (32 - s)); }

}  // namespace

std::string sha1_hex(std::string_view data) {
  std::uint32_t h0 = 0x67452301u, h1 = 0xEFCDAB89u, h2 = 0x98BADCFEu, h3 = 0x10325476u,
                h4 = 0xC3D2E1F0u;

  std::vector<unsigned char> msg(data.begin(), data.end());
  const std::uint64_t bit_len = static_cast<std::uint64_t>(msg.size()) * 8;
  msg.push_back(0x80);
  while (msg.size() % 64 != 56) msg.push_back(0x00);
  for (int i = 7; i >= 0; --i) msg.push_back(static_cast<unsigned char>(bit_len >> (8 * i)));

  std::uint32_t w[80];
  for (std::size_t chunk = 0; chunk < msg.size(); chunk += 64) {
    for (int i = 0; i < 16; ++i) {
      w[i] = (std::uint32_t(msg[chunk + 4 * i]) << 24) | (std::uint32_t(msg[chunk + 4 * i + 1]) << 16) |
             (std::uint32_t(msg[chunk + 4 * i + 2]) << 8) | std::uint32_t(msg[chunk + 4 * i + 3]);
    }
    for (int i = 16; i < 80; ++i) w[i] = rol(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);

    std::uint32_t a = h0, b = h1, c = h2, d = h3, e = h4;
    for (int i = 0; i < 80; ++i) {
      std::uint32_t f, k;
      if (i < 20) {
        f = (b & c) | (~b & d);
        k = 0x5A827999u;
      } else if (i < 40) {
        f = b ^ c ^ d;
        k = 0x6ED9EBA1u;
      } else if (i < 60) {
        f = (b & c) | (b & d) | (c & d);
        k = 0x8F1BBCDCu;
      } else {
        f = b ^ c ^ d;
        k = 0xCA62C1D6u;
      }
      const std::uint32_t tmp = rol(a, 5) + f + e + k + w[i];
      e = d;
      d = c;
      c = rol(b, 30);
      b = a;
      a = tmp;
    }
    h0 += a;
    h1 += b;
    h2 += c;
    h3 += d;
    h4 += e;
  }

  char out[41];
  std::snprintf(out, sizeof out, "%08x%08x%08x%08x%08x", h0, h1, h2, h3, h4);
  return out;
}

std::string git_blob_sha1(std::string_view content) {
  std::string blob = "blob " + std::to_string(content.size());
  blob.push_back('\0');
  blob.append(content);
  return sha1_hex(blob);
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed for " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_state_csv(const std::string& path, const solver::FieldState& state) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "xi,v,u,pi\n";
  char line[176];
  for (int i = 0; i < state.grid.cells; ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", state.grid.center(i), state.v[i],
                  state.u[i], state.pi[i]);
    out << line;
  }
}

void write_svg_chart(const std::string& path, const std::string& title, const ChartSeries& series,
                     bool log_y) {
  if (series.t.size() != series.y.size() || series.t.empty())
    throw InvalidArgumentError("write_svg_chart: malformed series");
  const int width = 720, height = 420;
  const int ml = 70, mr = 20, mt = 40, mb = 50;

  const double t_min = series.t.front();
  const double t_max = std::max(series.t.back(), t_min + 1e-300);
  std::vector<double> ys(series.y);
  if (log_y)
    for (double& y : ys) y = std::log10(std::max(std::abs(y), 1e-300));
  double y_min = ys[0], y_max = ys[0];
  for (double y : ys) {
    y_min = std::min(y_min, y);
    y_max = std::max(y_max, y);
  }
  if (y_max - y_min < 1e-12) {
    y_max += 1.0;
    y_min -= 1.0;
  }

  auto px = [&](double t) { return ml + (t - t_min) / (t_max - t_min) * (width - ml - mr); };
  auto py = [&](double y) { return height - mb - (y - y_min) / (y_max - y_min) * (height - mt - mb); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"16\">" << title << "</text>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr << "\" y2=\""
      << height - mb << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << height - mb
      << "\" stroke=\"black\"/>\n";
  char tick[220];
  for (int k = 0; k <= 4; ++k) {
    const double t = t_min + (t_max - t_min) * k / 4.0;
    const double yv = y_min + (y_max - y_min) * k / 4.0;
    std::snprintf(tick, sizeof tick,
                  "<text x=\"%.1f\" y=\"%d\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                  "font-size=\"11\">%.4g</text>\n",
                  px(t), height - mb + 18, t);
    svg << tick;
    std::snprintf(tick, sizeof tick,
                  "<text x=\"%d\" y=\"%.1f\" text-anchor=\"end\" font-family=\"sans-serif\" "
                  "font-size=\"11\">%s%.4g</text>\n",
                  ml - 6, py(yv) + 4, log_y ? "1e" : "", yv);
    svg << tick;
  }
  svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    std::snprintf(tick, sizeof tick, "%.2f,%.2f ", px(series.t[i]), py(ys[i]));
    svg << tick;
  }
  svg << "\"/>\n";
  svg << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">t</text>\n";
  svg << "</svg>\n";
  write_text_file(path, svg.str());
}

}  // namespace rcns::io
