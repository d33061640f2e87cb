#pragma once

// Certificate and witness files: the presentation text followed by an
// indented rule tree whose lines read
//
//   <kind> key=[value] ... : <lhs> <= <rhs>
//
// Reading never checks soundness; replay does.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psr/localization.hpp"
#include "psr/order_extension.hpp"
#include "psr/spectrum.hpp"

namespace psr {

class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& msg, int line);
  int line;
};

std::string write_certificate(const Presentation& p, const Certificate& c);
std::string write_witness(const Presentation& p, const AsymptoticWitness& w);
std::string write_membership(const Presentation& p, const MembershipCertificate& mc);
std::string write_ext(const Presentation& p, const ExtRelations& R, const ExtCertificate& ec);

/// a <= b (eq = false) or a = b (eq = true) in the localization at the
/// presentation's mult_set.
struct LocClaim {
  bool eq = false;
  Fraction a, b;
  LocCertificate cert;
};
std::string write_loc(const Presentation& p, const LocClaim& claim);

struct CertFile {
  enum class Kind { Certificate, Witness, Membership, Ext, Loc };
  Kind kind = Kind::Certificate;
  Presentation presentation;
  Certificate cert;
  std::optional<AsymptoticWitness> witness;
  std::optional<MembershipCertificate> membership;
  std::optional<ExtRelations> relations;
  std::optional<ExtCertificate> ext;
  std::optional<LocClaim> loc;
};

/// Throws FormatError or ParseError.
CertFile read_cert_file(const std::string& text);

/// Replays whatever the file holds and returns a one-line statement of the
/// verified claim. Throws ReplayError, WitnessError, ExtError or LocError.
std::string certify(const CertFile& f, std::uint64_t horizon = 12);

}  // namespace psr
