#include <fstream>
#include <sstream>

#include "cnet/errors.hpp"
#include "cnet/ingest.hpp"
#include "csv.hpp"

namespace cnet {

namespace {

// code,display_name,region,historic,aliases
constexpr std::string_view kBuiltinRegistry = R"(code,display_name,region,historic,aliases
ALB,Albania,Europe,false,Republic of Albania
AND,Andorra,Europe,false,
AUT,Austria,Europe,false,Republic of Austria;Osterreich
BEL,Belgium,Europe,false,Kingdom of Belgium
BGR,Bulgaria,Europe,false,Republic of Bulgaria
BIH,Bosnia and Herzegovina,Europe,false,Bosnia;Bosnia-Herzegovina;Bosnia & Herzegovina
BLR,Belarus,Europe,false,Byelorussia;Belorussia;Republic of Belarus;Byelorussian SSR
CHE,Switzerland,Europe,false,Swiss Confederation
CYP,Cyprus,Europe,false,Republic of Cyprus
CZE,Czech Republic,Europe,false,Czechia
DEU,Germany,Europe,false,Federal Republic of Germany;West Germany;FRG
DNK,Denmark,Europe,false,Kingdom of Denmark
ESP,Spain,Europe,false,Kingdom of Spain;Espana
EST,Estonia,Europe,false,Republic of Estonia
FIN,Finland,Europe,false,Republic of Finland
FRA,France,Europe,false,French Republic
FRO,Faroe Islands,Europe,false,Faroes;Faeroe Islands
GBR,United Kingdom,Europe,false,UK;U.K.;Great Britain;Britain;England;Scotland;Wales;Northern Ireland
GIB,Gibraltar,Europe,false,
GRC,Greece,Europe,false,Hellenic Republic
HRV,Croatia,Europe,false,Republic of Croatia;Hrvatska
HUN,Hungary,Europe,false,
IRL,Ireland,Europe,false,Republic of Ireland;Eire
ISL,Iceland,Europe,false,
ITA,Italy,Europe,false,Italian Republic;Italia
LIE,Liechtenstein,Europe,false,
LTU,Lithuania,Europe,false,Republic of Lithuania
LUX,Luxembourg,Europe,false,
LVA,Latvia,Europe,false,Republic of Latvia
MCO,Monaco,Europe,false,
MDA,Moldova,Europe,false,Republic of Moldova;Moldavia
MKD,North Macedonia,Europe,false,Macedonia;FYROM;Former Yugoslav Republic of Macedonia
MLT,Malta,Europe,false,
MNE,Montenegro,Europe,false,
NLD,Netherlands,Europe,false,The Netherlands;Holland;Kingdom of the Netherlands
NOR,Norway,Europe,false,Kingdom of Norway
POL,Poland,Europe,false,Republic of Poland;Polska
PRT,Portugal,Europe,false,Portuguese Republic
ROU,Romania,Europe,false,Rumania
SMR,San Marino,Europe,false,
SRB,Serbia,Europe,false,Republic of Serbia
SVK,Slovakia,Europe,false,Slovak Republic
SVN,Slovenia,Europe,false,Republic of Slovenia
SWE,Sweden,Europe,false,Kingdom of Sweden
UKR,Ukraine,Europe,false,Ukrainian SSR
VAT,Vatican City,Europe,false,Holy See;Vatican
XKX,Kosovo,Europe,false,
SUN,USSR,Europe,true,Soviet Union;U.S.S.R.;Union of Soviet Socialist Republics
CSK,Czechoslovakia,Europe,true,Czecho-Slovakia;Czechoslovak Socialist Republic
YUG,Yugoslavia,Europe,true,Socialist Federal Republic of Yugoslavia
DDR,East Germany,Europe,true,German Democratic Republic;GDR
SCG,Serbia and Montenegro,Europe,true,State Union of Serbia and Montenegro
AFG,Afghanistan,Asia,false,
ARE,United Arab Emirates,Asia,false,UAE;U.A.E.
ARM,Armenia,Asia,false,Republic of Armenia
AZE,Azerbaijan,Asia,false,Republic of Azerbaijan
BGD,Bangladesh,Asia,false,
BHR,Bahrain,Asia,false,
BRN,Brunei,Asia,false,Brunei Darussalam
BTN,Bhutan,Asia,false,
CHN,China,Asia,false,People's Republic of China;PR China;P.R. China;PRC
GEO,Georgia,Asia,false,Republic of Georgia
HKG,Hong Kong,Asia,false,Hong Kong SAR
IDN,Indonesia,Asia,false,
IND,India,Asia,false,Republic of India
IRN,Iran,Asia,false,Islamic Republic of Iran
IRQ,Iraq,Asia,false,
ISR,Israel,Asia,false,State of Israel
JOR,Jordan,Asia,false,
JPN,Japan,Asia,false,Nippon
KAZ,Kazakhstan,Asia,false,Kazakstan;Republic of Kazakhstan
KGZ,Kyrgyzstan,Asia,false,Kyrgyz Republic;Kirghizia
KHM,Cambodia,Asia,false,Kampuchea
KOR,South Korea,Asia,false,Korea;Republic of Korea;Korea Republic;Korea (South)
KWT,Kuwait,Asia,false,
LAO,Laos,Asia,false,Lao People's Democratic Republic;Lao PDR
LBN,Lebanon,Asia,false,
LKA,Sri Lanka,Asia,false,Ceylon
MAC,Macao,Asia,false,Macau
MDV,Maldives,Asia,false,
MMR,Myanmar,Asia,false,Burma
MNG,Mongolia,Asia,false,
MYS,Malaysia,Asia,false,
NPL,Nepal,Asia,false,
OMN,Oman,Asia,false,
PAK,Pakistan,Asia,false,
PHL,Philippines,Asia,false,
PRK,North Korea,Asia,false,Democratic People's Republic of Korea;DPRK;Korea (North)
PSE,Palestine,Asia,false,Palestinian Territories;State of Palestine
QAT,Qatar,Asia,false,
RUS,Russia,Asia,false,Russian Federation
SAU,Saudi Arabia,Asia,false,Kingdom of Saudi Arabia
SGP,Singapore,Asia,false,
SYR,Syria,Asia,false,Syrian Arab Republic
THA,Thailand,Asia,false,
TJK,Tajikistan,Asia,false,
TKM,Turkmenistan,Asia,false,
TLS,Timor-Leste,Asia,false,East Timor
TUR,Turkey,Asia,false,Turkiye;Republic of Turkey
TWN,Taiwan,Asia,false,Republic of China (Taiwan)
UZB,Uzbekistan,Asia,false,
VNM,Viet Nam,Asia,false,Vietnam
YEM,Yemen,Asia,false,
ATG,Antigua and Barbuda,NorthAmerica,false,
BHS,Bahamas,NorthAmerica,false,The Bahamas
BLZ,Belize,NorthAmerica,false,
BMU,Bermuda,NorthAmerica,false,
BRB,Barbados,NorthAmerica,false,
CAN,Canada,NorthAmerica,false,
CRI,Costa Rica,NorthAmerica,false,
CUB,Cuba,NorthAmerica,false,
DMA,Dominica,NorthAmerica,false,
DOM,Dominican Republic,NorthAmerica,false,
GRD,Grenada,NorthAmerica,false,
GRL,Greenland,NorthAmerica,false,
GTM,Guatemala,NorthAmerica,false,
HND,Honduras,NorthAmerica,false,
HTI,Haiti,NorthAmerica,false,
JAM,Jamaica,NorthAmerica,false,
KNA,Saint Kitts and Nevis,NorthAmerica,false,
LCA,Saint Lucia,NorthAmerica,false,
MEX,Mexico,NorthAmerica,false,United Mexican States
NIC,Nicaragua,NorthAmerica,false,
PAN,Panama,NorthAmerica,false,
PRI,Puerto Rico,NorthAmerica,false,
SLV,El Salvador,NorthAmerica,false,
TTO,Trinidad and Tobago,NorthAmerica,false,
USA,United States,NorthAmerica,false,US;U.S.;U.S.A.;United States of America
VCT,Saint Vincent and the Grenadines,NorthAmerica,false,
ARG,Argentina,SouthAmerica,false,
BOL,Bolivia,SouthAmerica,false,
BRA,Brazil,SouthAmerica,false,Brasil
CHL,Chile,SouthAmerica,false,
COL,Colombia,SouthAmerica,false,
ECU,Ecuador,SouthAmerica,false,
GUY,Guyana,SouthAmerica,false,
PER,Peru,SouthAmerica,false,
PRY,Paraguay,SouthAmerica,false,
SUR,Suriname,SouthAmerica,false,
URY,Uruguay,SouthAmerica,false,
VEN,Venezuela,SouthAmerica,false,
AGO,Angola,Africa,false,
BDI,Burundi,Africa,false,
BEN,Benin,Africa,false,
BFA,Burkina Faso,Africa,false,
BWA,Botswana,Africa,false,
CAF,Central African Republic,Africa,false,
CIV,Cote d'Ivoire,Africa,false,Côte d'Ivoire;Ivory Coast
CMR,Cameroon,Africa,false,
COD,Democratic Republic of the Congo,Africa,false,DR Congo;Zaire;Congo (Kinshasa)
COG,Congo,Africa,false,Republic of the Congo;Congo (Brazzaville)
CPV,Cape Verde,Africa,false,Cabo Verde
DJI,Djibouti,Africa,false,
DZA,Algeria,Africa,false,
EGY,Egypt,Africa,false,Arab Republic of Egypt
ERI,Eritrea,Africa,false,
ETH,Ethiopia,Africa,false,
GAB,Gabon,Africa,false,
GHA,Ghana,Africa,false,
GIN,Guinea,Africa,false,
GMB,Gambia,Africa,false,The Gambia
GNB,Guinea-Bissau,Africa,false,
GNQ,Equatorial Guinea,Africa,false,
KEN,Kenya,Africa,false,
LBR,Liberia,Africa,false,
LBY,Libya,Africa,false,Libyan Arab Jamahiriya
LSO,Lesotho,Africa,false,
MAR,Morocco,Africa,false,
MDG,Madagascar,Africa,false,
MLI,Mali,Africa,false,
MOZ,Mozambique,Africa,false,
MRT,Mauritania,Africa,false,
MUS,Mauritius,Africa,false,
MWI,Malawi,Africa,false,
NAM,Namibia,Africa,false,
NER,Niger,Africa,false,
NGA,Nigeria,Africa,false,
RWA,Rwanda,Africa,false,
SDN,Sudan,Africa,false,
SEN,Senegal,Africa,false,
SLE,Sierra Leone,Africa,false,
SOM,Somalia,Africa,false,
SSD,South Sudan,Africa,false,
STP,Sao Tome and Principe,Africa,false,
SWZ,Eswatini,Africa,false,Swaziland
SYC,Seychelles,Africa,false,
TCD,Chad,Africa,false,
TGO,Togo,Africa,false,
TUN,Tunisia,Africa,false,
TZA,Tanzania,Africa,false,United Republic of Tanzania
UGA,Uganda,Africa,false,
ZAF,South Africa,Africa,false,Republic of South Africa
ZMB,Zambia,Africa,false,
ZWE,Zimbabwe,Africa,false,
AUS,Australia,Oceania,false,Commonwealth of Australia
FJI,Fiji,Oceania,false,
FSM,Micronesia,Oceania,false,Federated States of Micronesia
KIR,Kiribati,Oceania,false,
MHL,Marshall Islands,Oceania,false,
NCL,New Caledonia,Oceania,false,
NZL,New Zealand,Oceania,false,Aotearoa
PLW,Palau,Oceania,false,
PNG,Papua New Guinea,Oceania,false,
PYF,French Polynesia,Oceania,false,
SLB,Solomon Islands,Oceania,false,
TON,Tonga,Oceania,false,
TUV,Tuvalu,Oceania,false,
VUT,Vanuatu,Oceania,false,
WSM,Samoa,Oceania,false,
)";

bool parse_bool(std::string_view s, std::size_t line) {
  auto v = to_lower_ascii(trim(s));
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no" || v.empty()) return false;
  throw DataError("invalid historic flag '" + std::string(s) + "'", line);
}

}  // namespace

std::string_view to_string(Region r) {
  switch (r) {
    case Region::Europe: return "Europe";
    case Region::Asia: return "Asia";
    case Region::NorthAmerica: return "NorthAmerica";
    case Region::SouthAmerica: return "SouthAmerica";
    case Region::Africa: return "Africa";
    case Region::Oceania: return "Oceania";
  }
  return "Europe";
}

Region region_from_string(std::string_view name) {
  for (Region r : kAllRegions)
    if (to_string(r) == name) return r;
  throw UsageError("unknown region '" + std::string(name) + "'");
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

void CountryRegistry::add(CountryEntry entry, const std::vector<std::string>& aliases) {
  if (entry.code.size() < 2 || entry.code.size() > 3)
    throw DataError("country code '" + entry.code + "' must have 2-3 characters");
  for (char c : entry.code)
    if (!((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')))
      throw DataError("country code '" + entry.code + "' must be uppercase");
  if (by_code_.contains(entry.code))
    throw DataError("duplicate country code '" + entry.code + "'");

  const std::size_t index = entries_.size();
  std::vector<std::string> keys{to_lower_ascii(entry.code),
                                to_lower_ascii(trim(entry.display_name))};
  for (const auto& a : aliases) keys.push_back(to_lower_ascii(trim(a)));
  for (const auto& k : keys) {
    if (k.empty()) continue;
    auto it = alias_.find(k);
    if (it != alias_.end() && it->second != index)
      throw DataError("alias '" + k + "' of " + entry.code + " already names " +
                      entries_[it->second].code);
  }
  for (auto& k : keys)
    if (!k.empty()) alias_.emplace(std::move(k), index);
  by_code_.emplace(entry.code, index);
  entries_.push_back(std::move(entry));
}

const CountryEntry* CountryRegistry::find(std::string_view raw) const {
  auto it = alias_.find(to_lower_ascii(trim(raw)));
  return it == alias_.end() ? nullptr : &entries_[it->second];
}

const CountryEntry* CountryRegistry::by_code(std::string_view code) const {
  auto it = by_code_.find(std::string(code));
  return it == by_code_.end() ? nullptr : &entries_[it->second];
}

CountryRegistry CountryRegistry::from_csv(std::string_view text) {
  auto rows = csv::read(text);
  if (rows.empty()) throw DataError("registry is empty");
  const auto& header = rows.front().fields;
  const std::vector<std::string> expected{"code", "display_name", "region", "historic",
                                          "aliases"};
  if (header != expected)
    throw DataError("registry header must be code,display_name,region,historic,aliases",
                    rows.front().line);

  CountryRegistry reg;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() != 5)
      throw DataError("expected 5 columns, got " + std::to_string(row.fields.size()),
                      row.line);
    CountryEntry e;
    e.code = std::string(trim(row.fields[0]));
    e.display_name = std::string(trim(row.fields[1]));
    try {
      e.region = region_from_string(trim(row.fields[2]));
    } catch (const UsageError& err) {
      throw DataError(err.what(), row.line);
    }
    e.historic = parse_bool(row.fields[3], row.line);
    try {
      reg.add(std::move(e), csv::split_list(row.fields[4]));
    } catch (const DataError& err) {
      throw DataError(err.what(), row.line);
    }
  }
  return reg;
}

CountryRegistry CountryRegistry::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read registry file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_csv(ss.str());
}

const CountryRegistry& builtin_registry() {
  static const CountryRegistry reg = CountryRegistry::from_csv(kBuiltinRegistry);
  return reg;
}

std::optional<CountryEntry> normalize_country(std::string_view raw,
                                              const CountryRegistry& registry) {
  if (const auto* e = registry.find(raw)) return *e;
  return std::nullopt;
}

}  // namespace cnet
