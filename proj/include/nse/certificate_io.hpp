#pragma once

#include <string>

#include "nse/gmatrix.hpp"

namespace nse {

// JSON text of a certificate with a fixed key order (kind, n, edges,
// matrix, eigenvalues, tolerance, embedding, report), 1-based edge
// endpoints, the dense matrix row-major, and every number printed with 17
// significant digits.  Equal certificates serialize to identical bytes.
std::string certificate_to_json(const Certificate& cert);

// Inverse of certificate_to_json.  The sparse form cannot represent
// entries outside the declared support, so `off_support` reports the
// largest deviation of the parsed dense matrix from its reconstruction
// (nonzero values indicate tampering and should fail verification).
// Throws std::invalid_argument on malformed input.
struct ParsedCertificate {
  Certificate cert;
  double off_support = 0.0;
};
ParsedCertificate certificate_from_json(const std::string& text);

// SVG drawing of an embedding certificate in a 512x512 viewport: 2-D
// points on the unit circle scaled to radius 230, 1-D values spread along
// the horizontal axis; exactly one circle element per node and one line
// element per edge, with 1-based text labels.  Throws
// std::invalid_argument for certificates without an embedding.
std::string certificate_to_svg(const Certificate& cert);

}  // namespace nse
