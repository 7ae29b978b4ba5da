#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relic/structure.hpp"
#include "relic/theory.hpp"

namespace relic {

// Families of theories, either listed outright or presented by a generator
// whose member stream is decidable (membership, probing, counting) without
// materializing the whole family.
//
//   Explicit         the `members` list is the family.
//   NCubeSeq         one n-cube per dimension d >= 1; the disjoint variant
//                    renames the edge symbol of member d to R<d>.
//   DisjointRelabel  infinitely many copies of a base structure, the i-th
//                    copy with every symbol renamed <name>_<i>.
//   EmptyLang        T0(n) for the listed sizes and (optionally) for every
//                    n on the grid empty_all_from + k*empty_step (k >= 0).
//   PowerFamily      2^l structures on param_n elements over unary-or-binary
//                    symbols R0..R{l-1}, each symbol full or empty per subset.
//   Iilu             rows t < modulus; member (t, i) has param_n elements and
//                    unary symbols Q0..Q{t+i*modulus}, Qj full exactly when
//                    j = t (mod modulus).  modulus = 0 degenerates to the
//                    single member with Q0 full (a finite family).
//   Prop33           `count` structures A_i, each `count` copies of a base
//                    tagged by equivalence symbols E0..E{count-1} (see
//                    build_prop33_family); the stream is desk-truncated to
//                    `count` members but stands in for an infinite family.
//
// For generators, `members` holds additional explicit members (typically
// closure additions) and `excluded` removes members from the stream (used by
// generating-set removal experiments).
enum class FamilyKind { Explicit, NCubeSeq, DisjointRelabel, EmptyLang, PowerFamily, Iilu, Prop33 };

// Symbolic multiset of finite model sizes across a family.
struct CardinalitySpectrum {
  std::map<int, long> finite;              // size -> multiplicity (exact)
  std::vector<int> infinite_multiplicity;  // sizes realized by infinitely many members
  std::optional<int> all_sizes_from;       // every size >= this is realized
  bool unbounded_sizes = false;            // arbitrarily large finite sizes occur
  long infinite_model_members = 0;         // members with no finite models; -1 = infinitely many

  bool sizes_unbounded() const { return unbounded_sizes || all_sizes_from.has_value(); }
  bool infinitely_many_of(int n) const;
  bool any_finite_sizes() const;
  std::optional<int> max_finite_size() const;  // nullopt when unbounded or none
};

struct FamilyDescriptor {
  std::string name;
  FamilyKind kind = FamilyKind::Explicit;
  std::vector<TheoryRef> members;   // Explicit: the family; generators: extras
  std::vector<TheoryRef> excluded;  // removed members
  bool languages_disjoint = false;
  // Declares that every member is an accumulation point of the others (set
  // by stand-in descriptors for families without a least generating set).
  bool declared_dense = false;

  std::optional<Structure> base;  // DisjointRelabel / Prop33
  int param_m = 0;                // PowerFamily arity
  int param_l = 0;                // PowerFamily symbol count
  int param_n = 0;                // PowerFamily / Iilu model size
  int modulus = 0;                // Iilu
  int count = 0;                  // Prop33 copies
  bool ncube_disjoint = false;    // NCubeSeq language variant
  std::vector<int> empty_sizes;   // EmptyLang explicit sizes (sorted, unique)
  std::optional<int> empty_all_from;
  int empty_step = 1;             // stride of the all-from tail

  CardinalitySpectrum spectrum;
};

// Factories (fill the spectrum and metadata consistently).
FamilyDescriptor explicit_family(std::string name, std::vector<TheoryRef> members,
                                 bool languages_disjoint = false);
FamilyDescriptor ncube_family(std::string name, bool disjoint_languages);
FamilyDescriptor disjoint_relabel_family(std::string name, Structure base);
FamilyDescriptor empty_lang_family(std::string name, std::vector<int> sizes,
                                   std::optional<int> all_from, int step = 1);

// Member stream: generated members first (in generator order), then the
// explicit `members`, minus `excluded`.  Indices address that stream.
bool family_infinite(const FamilyDescriptor& fam);
long family_member_count(const FamilyDescriptor& fam);  // -1 when infinite
TheoryRef family_member(const FamilyDescriptor& fam, long index);
std::vector<TheoryRef> probe_members(const FamilyDescriptor& fam, long k);
// Symbolic, exact membership (excluded members report false).
bool family_contains(const FamilyDescriptor& fam, const TheoryRef& t);
bool family_excluded(const FamilyDescriptor& fam, const TheoryRef& t);
// The structure A_index of the tagged-copies construction: `count` disjoint
// copies of base, E<index> holding the copies as classes and every other
// E<j> interpreted as equality.
Structure prop33_member(const Structure& base, int count, int index);
// Union of the languages of the first k stream members, the explicit
// members, and the declared languages of Limit members.
Signature family_probe_language(const FamilyDescriptor& fam, long k);

FamilyDescriptor with_member(FamilyDescriptor fam, const TheoryRef& t);
FamilyDescriptor without_member(FamilyDescriptor fam, const TheoryRef& t);

// ---- family file format ----
//
//   # comment
//   family <name>
//   kind explicit|generator
//   member <structure-file> [structure-name]     (Fin theory from a file)
//   member T0 <n>
//   member T0inf
//   generator ncube disjoint=true|false
//   generator relabel base=<structure-file> [name=<structure-name>]
//   generator emptylang [sizes=<a,b,c>] [from=<n>] [step=<k>]
//   generator power m=<m> l=<l> n=<n>
//   generator iilu n=<n> mu=<mu>
//   generator prop33 base=<structure-file> count=<k>
//   languages disjoint=true|false
//   spectrum size <n> x <mult|inf>
//   spectrum all-from <n>
//   spectrum unbounded
//   spectrum inf-members <k|inf>
//   end
//
// Structure files are resolved relative to base_dir.  Spectrum lines are
// optional: factories derive the spectrum for generators, and explicit
// members contribute their model sizes automatically.
FamilyDescriptor parse_family(const std::string& text, const std::string& base_dir = "");
FamilyDescriptor load_family(const std::string& path);

}  // namespace relic
