#include "nse/certificate_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace nse {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

CertificateKind kind_from_name(const std::string& name) {
  if (name == "path_embedding") return CertificateKind::PathEmbedding;
  if (name == "outerplanar_embedding")
    return CertificateKind::OuterplanarEmbedding;
  if (name == "high_corank_matrix") return CertificateKind::HighCorankMatrix;
  throw std::invalid_argument("unknown certificate kind: " + name);
}

}  // namespace

std::string certificate_to_json(const Certificate& cert) {
  const Graph& g = cert.matrix.graph;
  const int n = g.node_count();
  const Matrix dense = cert.matrix.to_dense();

  std::string out;
  out += "{\"kind\":";
  append_escaped(out, certificate_kind_name(cert.kind));
  out += ",\"n\":" + std::to_string(n);

  out += ",\"edges\":[";
  for (int e = 0; e < g.edge_count(); ++e) {
    if (e) out += ',';
    out += '[' + std::to_string(g.edges()[e].i + 1) + ',' +
           std::to_string(g.edges()[e].j + 1) + ']';
  }
  out += ']';

  out += ",\"matrix\":[";
  for (int i = 0; i < n; ++i) {
    if (i) out += ',';
    out += '[';
    for (int j = 0; j < n; ++j) {
      if (j) out += ',';
      out += fmt(dense(i, j));
    }
    out += ']';
  }
  out += ']';

  out += ",\"eigenvalues\":[";
  for (int k = 0; k < cert.eigen.eigenvalues.size(); ++k) {
    if (k) out += ',';
    out += fmt(cert.eigen.eigenvalues[k]);
  }
  out += ']';

  out += ",\"tolerance\":" + fmt(cert.tolerance);

  if (cert.embedding.size() > 0) {
    out += ",\"embedding\":[";
    for (int i = 0; i < cert.embedding.cols(); ++i) {
      if (i) out += ',';
      out += '[';
      for (int d = 0; d < cert.embedding.rows(); ++d) {
        if (d) out += ',';
        out += fmt(cert.embedding(d, i));
      }
      out += ']';
    }
    out += ']';
  }

  out += ",\"report\":[";
  for (std::size_t k = 0; k < cert.report.size(); ++k) {
    if (k) out += ',';
    append_escaped(out, cert.report[k]);
  }
  out += "]}\n";
  return out;
}

ParsedCertificate certificate_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& err) {
    throw std::invalid_argument(std::string("certificate is not valid JSON: ") +
                                err.what());
  }

  try {
    ParsedCertificate out;
    Certificate& cert = out.cert;
    cert.kind = kind_from_name(j.at("kind").get<std::string>());

    const int n = j.at("n").get<int>();
    if (n < 0) throw std::invalid_argument("negative node count");
    std::vector<std::pair<int, int>> pairs;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("edge entries must be pairs");
      pairs.emplace_back(e[0].get<int>() - 1, e[1].get<int>() - 1);
    }
    Graph g(n, pairs);

    const auto& rows = j.at("matrix");
    if (static_cast<int>(rows.size()) != n)
      throw std::invalid_argument("matrix row count does not match n");
    Matrix dense(n, n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n)
        throw std::invalid_argument("matrix is not square");
      for (int k = 0; k < n; ++k) dense(i, k) = rows[i][k].get<double>();
    }

    cert.matrix.graph = g;
    cert.matrix.diagonal = dense.diagonal();
    cert.matrix.edge_values = Vector::Zero(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge ed = g.edges()[e];
      cert.matrix.edge_values[e] = 0.5 * (dense(ed.i, ed.j) + dense(ed.j, ed.i));
    }
    out.off_support =
        (dense - cert.matrix.to_dense()).cwiseAbs().maxCoeff();

    const auto& evs = j.at("eigenvalues");
    cert.eigen.eigenvalues = Vector::Zero(evs.size());
    for (std::size_t k = 0; k < evs.size(); ++k)
      cert.eigen.eigenvalues[static_cast<Eigen::Index>(k)] =
          evs[k].get<double>();

    cert.tolerance = j.at("tolerance").get<double>();
    if (!(cert.tolerance > 0.0))
      throw std::invalid_argument("tolerance must be positive");

    // Reclassify the recorded spectrum exactly as the producer did, so
    // the parsed claim (negative count / corank) matches the original.
    cert.eigen.tol = spectral_tolerance(cert.matrix.to_dense(), cert.tolerance);
    cert.eigen.n_negative = cert.eigen.corank = cert.eigen.n_positive = 0;
    for (int k = 0; k < cert.eigen.eigenvalues.size(); ++k) {
      const double ev = cert.eigen.eigenvalues[k];
      if (ev < -cert.eigen.tol)
        ++cert.eigen.n_negative;
      else if (ev > cert.eigen.tol)
        ++cert.eigen.n_positive;
      else
        ++cert.eigen.corank;
    }

    if (j.contains("embedding")) {
      const auto& emb = j.at("embedding");
      if (static_cast<int>(emb.size()) != n)
        throw std::invalid_argument("embedding size does not match n");
      const int d = n > 0 ? static_cast<int>(emb[0].size()) : 0;
      cert.embedding = Matrix::Zero(d, n);
      for (int i = 0; i < n; ++i) {
        if (static_cast<int>(emb[i].size()) != d)
          throw std::invalid_argument("embedding rows have mixed dimensions");
        for (int k = 0; k < d; ++k) cert.embedding(k, i) = emb[i][k].get<double>();
      }
    } else {
      cert.embedding = Matrix::Zero(0, 0);
    }

    for (const auto& line : j.at("report"))
      cert.report.push_back(line.get<std::string>());
    return out;
  } catch (const nlohmann::json::exception& err) {
    throw std::invalid_argument(std::string("certificate JSON malformed: ") +
                                err.what());
  }
}

std::string certificate_to_svg(const Certificate& cert) {
  if (cert.embedding.size() == 0)
    throw std::invalid_argument(
        "matrix certificates have no embedding to draw");
  const Graph& g = cert.matrix.graph;
  const int n = g.node_count();

  // Node positions in viewport coordinates.
  std::vector<double> px(n), py(n);
  if (cert.embedding.rows() >= 2) {
    for (int i = 0; i < n; ++i) {
      px[i] = 256.0 + 230.0 * cert.embedding(0, i);
      py[i] = 256.0 - 230.0 * cert.embedding(1, i);
    }
  } else {
    const Vector u = cert.embedding.row(0);
    const double lo = u.minCoeff(), hi = u.maxCoeff();
    const double span = hi - lo;
    for (int i = 0; i < n; ++i) {
      px[i] = span > 0 ? 66.0 + 380.0 * (u[i] - lo) / span : 256.0;
      py[i] = 256.0;
    }
  }

  auto coord = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" "
         "height=\"512\" viewBox=\"0 0 512 512\">\n";
  svg += "<rect width=\"512\" height=\"512\" fill=\"white\"/>\n";
  if (cert.embedding.rows() >= 2) {
    // Guide circle drawn as a path so the circle elements stay one per node.
    svg += "<path d=\"M 486 256 A 230 230 0 1 0 26 256 A 230 230 0 1 0 486 "
           "256 Z\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  } else {
    svg += "<path d=\"M 46 256 L 466 256\" fill=\"none\" stroke=\"#cccccc\" "
           "stroke-width=\"1\"/>\n";
  }
  for (const Edge& e : g.edges()) {
    svg += "<line x1=\"" + coord(px[e.i]) + "\" y1=\"" + coord(py[e.i]) +
           "\" x2=\"" + coord(px[e.j]) + "\" y2=\"" + coord(py[e.j]) +
           "\" stroke=\"#444444\" stroke-width=\"1.5\"/>\n";
  }
  for (int i = 0; i < n; ++i) {
    svg += "<circle cx=\"" + coord(px[i]) + "\" cy=\"" + coord(py[i]) +
           "\" r=\"7\" fill=\"#2b6cb0\"/>\n";
  }
  for (int i = 0; i < n; ++i) {
    const double dx = px[i] >= 256.0 ? 10.0 : -10.0;
    svg += "<text x=\"" + coord(px[i] + dx) + "\" y=\"" +
           coord(py[i] - 10.0) + "\" font-family=\"sans-serif\" "
           "font-size=\"14\" text-anchor=\"" +
           (px[i] >= 256.0 ? "start" : "end") + "\">" + std::to_string(i + 1) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace nse
