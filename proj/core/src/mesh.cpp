#include "picolit/mesh.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <utility>

#include "picolit/error.hpp"

namespace picolit {

namespace {

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

using Heading = std::pair<std::string_view, std::string_view>;

// First-segment MeSH headings, sorted by code.
constexpr std::array kHeadings = {
    Heading{"A01", "Body Regions"},
    Heading{"A02", "Musculoskeletal System"},
    Heading{"A03", "Digestive System"},
    Heading{"A04", "Respiratory System"},
    Heading{"A05", "Urogenital System"},
    Heading{"A06", "Endocrine System"},
    Heading{"A07", "Cardiovascular System"},
    Heading{"A08", "Nervous System"},
    Heading{"A09", "Sense Organs"},
    Heading{"A10", "Tissues"},
    Heading{"A11", "Cells"},
    Heading{"A12", "Fluids and Secretions"},
    Heading{"A13", "Animal Structures"},
    Heading{"A14", "Stomatognathic System"},
    Heading{"A15", "Hemic and Immune Systems"},
    Heading{"A16", "Embryonic Structures"},
    Heading{"A17", "Integumentary System"},
    Heading{"A18", "Plant Structures"},
    Heading{"A19", "Fungal Structures"},
    Heading{"A20", "Bacterial Structures"},
    Heading{"A21", "Viral Structures"},
    Heading{"B01", "Eukaryota"},
    Heading{"B02", "Archaea"},
    Heading{"B03", "Bacteria"},
    Heading{"B04", "Viruses"},
    Heading{"B05", "Organism Forms"},
    Heading{"C01", "Infections"},
    Heading{"C04", "Neoplasms"},
    Heading{"C05", "Musculoskeletal Diseases"},
    Heading{"C06", "Digestive System Diseases"},
    Heading{"C07", "Stomatognathic Diseases"},
    Heading{"C08", "Respiratory Tract Diseases"},
    Heading{"C09", "Otorhinolaryngologic Diseases"},
    Heading{"C10", "Nervous System Diseases"},
    Heading{"C11", "Eye Diseases"},
    Heading{"C12", "Urogenital Diseases"},
    Heading{"C13", "Female Urogenital Diseases and Pregnancy Complications"},
    Heading{"C14", "Cardiovascular Diseases"},
    Heading{"C15", "Hemic and Lymphatic Diseases"},
    Heading{"C16", "Congenital, Hereditary, and Neonatal Diseases and Abnormalities"},
    Heading{"C17", "Skin and Connective Tissue Diseases"},
    Heading{"C18", "Nutritional and Metabolic Diseases"},
    Heading{"C19", "Endocrine System Diseases"},
    Heading{"C20", "Immune System Diseases"},
    Heading{"C21", "Disorders of Environmental Origin"},
    Heading{"C22", "Animal Diseases"},
    Heading{"C23", "Pathological Conditions, Signs and Symptoms"},
    Heading{"C24", "Occupational Diseases"},
    Heading{"C25", "Chemically-Induced Disorders"},
    Heading{"C26", "Wounds and Injuries"},
    Heading{"D01", "Inorganic Chemicals"},
    Heading{"D02", "Organic Chemicals"},
    Heading{"D03", "Heterocyclic Compounds"},
    Heading{"D04", "Polycyclic Compounds"},
    Heading{"D05", "Macromolecular Substances"},
    Heading{"D06", "Hormones, Hormone Substitutes, and Hormone Antagonists"},
    Heading{"D08", "Enzymes and Coenzymes"},
    Heading{"D09", "Carbohydrates"},
    Heading{"D10", "Lipids"},
    Heading{"D12", "Amino Acids, Peptides, and Proteins"},
    Heading{"D13", "Nucleic Acids, Nucleotides, and Nucleosides"},
    Heading{"D20", "Complex Mixtures"},
    Heading{"D23", "Biological Factors"},
    Heading{"D25", "Biomedical and Dental Materials"},
    Heading{"D26", "Pharmaceutical Preparations"},
    Heading{"D27", "Chemical Actions and Uses"},
    Heading{"E01", "Diagnosis"},
    Heading{"E02", "Therapeutics"},
    Heading{"E03", "Anesthesia and Analgesia"},
    Heading{"E04", "Surgical Procedures, Operative"},
    Heading{"E05", "Investigative Techniques"},
    Heading{"E06", "Dentistry"},
    Heading{"E07", "Equipment and Supplies"},
    Heading{"F01", "Behavior and Behavior Mechanisms"},
    Heading{"F02", "Psychological Phenomena"},
    Heading{"F03", "Mental Disorders"},
    Heading{"F04", "Behavioral Disciplines and Activities"},
    Heading{"G01", "Physical Phenomena"},
    Heading{"G02", "Chemical Phenomena"},
    Heading{"G03", "Metabolism"},
    Heading{"G04", "Cell Physiological Phenomena"},
    Heading{"G05", "Genetic Phenomena"},
    Heading{"G06", "Microbiological Phenomena"},
    Heading{"G07", "Physiological Phenomena"},
    Heading{"G08", "Reproductive and Urinary Physiological Phenomena"},
    Heading{"G09", "Circulatory and Respiratory Physiological Phenomena"},
    Heading{"G10", "Digestive System and Oral Physiological Phenomena"},
    Heading{"G11", "Musculoskeletal and Neural Physiological Phenomena"},
    Heading{"G12", "Immune System Phenomena"},
    Heading{"G13", "Integumentary System Physiological Phenomena"},
    Heading{"G14", "Ocular Physiological Phenomena"},
    Heading{"G15", "Plant Physiological Phenomena"},
    Heading{"G16", "Biological Phenomena"},
    Heading{"G17", "Mathematical Concepts"},
    Heading{"H01", "Natural Science Disciplines"},
    Heading{"H02", "Health Occupations"},
    Heading{"I01", "Social Sciences"},
    Heading{"I02", "Education"},
    Heading{"I03", "Human Activities"},
    Heading{"J01", "Technology, Industry, and Agriculture"},
    Heading{"J02", "Food and Beverages"},
    Heading{"J03", "Non-Medical Public and Private Facilities"},
    Heading{"K01", "Humanities"},
    Heading{"L01", "Information Science"},
    Heading{"M01", "Persons"},
    Heading{"N01", "Population Characteristics"},
    Heading{"N02", "Health Care Facilities, Manpower, and Services"},
    Heading{"N03", "Health Care Economics and Organizations"},
    Heading{"N04", "Health Services Administration"},
    Heading{"N05", "Health Care Quality, Access, and Evaluation"},
    Heading{"N06", "Environment and Public Health"},
    Heading{"V01", "Publication Components"},
    Heading{"V02", "Publication Formats"},
    Heading{"V03", "Study Characteristics"},
    Heading{"V04", "Support of Research"},
    Heading{"Z01", "Geographic Locations"},
};

constexpr bool headings_sorted()
{
    for (std::size_t i = 1; i < kHeadings.size(); ++i) {
        if (!(kHeadings[i - 1].first < kHeadings[i].first)) {
            return false;
        }
    }
    return true;
}
static_assert(headings_sorted());

using Category = std::pair<char, std::string_view>;

constexpr std::array kCategories = {
    Category{'A', "Anatomy"},
    Category{'B', "Organisms"},
    Category{'C', "Diseases"},
    Category{'D', "Chemicals and Drugs"},
    Category{'E', "Analytical, Diagnostic and Therapeutic Techniques, and Equipment"},
    Category{'F', "Psychiatry and Psychology"},
    Category{'G', "Phenomena and Processes"},
    Category{'H', "Disciplines and Occupations"},
    Category{'I', "Anthropology, Education, Sociology, and Social Phenomena"},
    Category{'J', "Technology, Industry, and Agriculture"},
    Category{'K', "Humanities"},
    Category{'L', "Information Science"},
    Category{'M', "Named Groups"},
    Category{'N', "Health Care"},
    Category{'V', "Publication Characteristics"},
    Category{'Z', "Geographic Locations"},
};
static_assert(kCategories.size() == 16);

}  // namespace

std::string MeshTreeNumber::str() const
{
    std::string out;
    for (const auto& seg : m_segments) {
        if (!out.empty()) {
            out.push_back('.');
        }
        out += seg;
    }
    return out;
}

MeshTreeNumber parse_tree_number(std::string_view text)
{
    if (text.empty()) {
        throw ParseError("empty MeSH tree number");
    }
    MeshTreeNumber tree;
    std::size_t pos = 0;
    while (true) {
        auto dot = text.find('.', pos);
        auto seg = text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
        bool ok = tree.m_segments.empty()
                      ? (seg.size() >= 2 && seg[0] >= 'A' && seg[0] <= 'Z' && all_digits(seg.substr(1)))
                      : all_digits(seg);
        if (!ok) {
            throw ParseError("malformed MeSH tree number '" + std::string(text) + "': bad segment '"
                             + std::string(seg) + "'");
        }
        tree.m_segments.emplace_back(seg);
        if (dot == std::string_view::npos) {
            break;
        }
        pos = dot + 1;
    }
    return tree;
}

std::string truncate(const MeshTreeNumber& tree, std::size_t granularity)
{
    if (granularity == 0) {
        throw std::invalid_argument("granularity must be >= 1");
    }
    std::string out;
    const auto& segs = tree.segments();
    const std::size_t n = std::min(granularity, segs.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            out.push_back('.');
        }
        out += segs[i];
    }
    return out;
}

std::string concept_label(std::string_view code)
{
    auto it = std::lower_bound(kHeadings.begin(), kHeadings.end(), code,
                               [](const Heading& h, std::string_view c) { return h.first < c; });
    if (it != kHeadings.end() && it->first == code) {
        return std::string(it->second);
    }
    return std::string(code);
}

std::string_view category_name(char letter) noexcept
{
    for (const auto& [l, name] : kCategories) {
        if (l == letter) {
            return name;
        }
    }
    return {};
}

}  // namespace picolit
