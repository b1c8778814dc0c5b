#pragma once

#include <cstddef>
#include <vector>

#include "essrad/bracket.hpp"
#include "essrad/essential.hpp"
#include "essrad/operator_set.hpp"
#include "essrad/spectral.hpp"

namespace essrad {

enum class RadiusKind { gen_rho, joint_rho, gen_rho_ess, joint_rho_ess };

struct JointOptions {
  SpectralOptions spectral{};
  /// Cap on the number of words visited per call.
  std::size_t max_words = std::size_t{1} << 18;
};

/// Level l (1-based, stored at index l-1): bracket for the largest spectral
/// radius over products of length l. Only lexicographically minimal
/// rotations of each word are evaluated. Levels that would exceed the word
/// budget are omitted and `*flagged` is set.
std::vector<Bracket> gen_radius_levels(const MatrixSet& s, int m_max, const JointOptions& opt = {},
                                       bool* flagged = nullptr);

/// max over l <= m_max of levels[l].lo^(1/l); a certified lower bound for rho(S).
double gen_radius_lb(const MatrixSet& s, int m_max, const JointOptions& opt = {}, bool* flagged = nullptr);

/// min over m <= m_max of (max over S^m of ||P||.hi)^(1/m); a certified upper
/// bound for the joint spectral radius.
double joint_radius_ub(const MatrixSet& s, int m_max, SpaceTag space = SpaceTag::l2, const JointOptions& opt = {},
                       bool* flagged = nullptr);

struct GripenbergOptions {
  /// Depth of the exhaustive lower-bound enumeration.
  int lb_depth = 8;
  /// Depth of the norm bound in the caller's space.
  int ub_depth = 2;
  SpaceTag space = SpaceTag::l2;
  std::size_t max_nodes = 4000;
  /// Vertex cap for the invariant-cone certificate.
  std::size_t cone_vectors = 120;
  int max_depth = 60;
  JointOptions joint{};
};

/// Branch-and-bound bracket for the joint spectral radius. The lower end is
/// the best rho(P)^(1/|P|) seen. The upper end is the smallest of: the
/// caller-space norm bound, an invariant-cone certificate seeded by the best
/// product, and the l1 norm tree whose nodes are pruned once
/// ||P||^(1/|P|) <= lb + delta.
Bracket gripenberg_bracket(const MatrixSet& s, double delta, const GripenbergOptions& opt = {});

/// Bracket for a finite-set radius (generalized or joint) of matrices.
Bracket set_radius(const MatrixSet& s, RadiusKind kind, double delta, const GripenbergOptions& opt = {});

struct EssSetOptions {
  int m_max = 1;
  EssentialOptions ess{};
  std::size_t max_words = 4096;
};

/// max over m <= m_max of (max over S^m of rho_ess(P).hi)^(1/m): the observed
/// value used as an uncertified estimate of the generalized essential radius.
double ess_gen_radius_ub(const FamilySet& s, const EssSetOptions& opt = {});
/// min over m <= m_max of (max over S^m of gamma(P).hi)^(1/m): certified.
double ess_joint_radius_ub(const FamilySet& s, const EssSetOptions& opt = {});

/// Certified bracket shared by rho_ess(S) and rho-hat_ess(S):
/// [max observed rho_ess(P).lo^(1/m), ess_joint_radius_ub]. Singletons reduce
/// to essential_spectral_radius of the element.
Bracket ess_set_radius(const FamilySet& s, const EssSetOptions& opt = {});

}  // namespace essrad
