#pragma once

#include "renorm/format.hpp"

#include <map>
#include <string>
#include <vector>

namespace renorm::tables {

// Closed forms for the free energies at genus (or 't Hooft order) 2..4. Four printed
// entries are corrected here, and misprints() keeps the printed forms:
//   1D F_3 and fat F_{0,3}: the I_2^2 I_3 term carries v^5 (weighted homogeneity), not v^6;
//   2D F_2 in (w, J): the J_2 J_3 coefficient is 1015/128, not 1015/384;
//   2D F_3 tilde: the 205/13824 term is I~_2^2 I~_3^2, not I~_2^2 I~_3^3;
//   2D F_4 tilde: the 177/20480 term is I~_2 I~_3 I~_4^2, not I~_3 I~_4^2.

inline Poly one_d(int g) {
  static const std::map<int, std::string> t = {
      {2, "5/24*v^3*I2^2 + 1/8*v^2*I3"},
      {3, "5/16*v^6*I2^4 + 25/48*v^5*I2^2*I3 + 1/12*v^4*I3^2 + 7/48*v^4*I2*I4 + 1/48*v^3*I5"},
      {4,
       "1105/1152*v^9*I2^6 + 985/384*v^8*I2^4*I3 + 445/288*v^7*I2^2*I3^2 + 11/96*v^6*I3^3"
       " + 161/192*v^7*I2^3*I4 + 7/12*v^6*I2*I3*I4 + 21/640*v^5*I4^2 + 113/576*v^6*I2^2*I5"
       " + 5/96*v^5*I3*I5 + 1/32*v^5*I2*I6 + 1/384*v^4*I7"},
  };
  return parse_text(t.at(g));
}

/// Thin matrix-model free energy: genus 2 in (v, I), genus 3 and 4 in the factorial tilde form.
inline Poly hmm(int g) {
  static const std::map<int, std::string> t = {
      {2, "1/24*N*v^3*I2^2 + 1/6*N^3*v^3*I2^2 + 1/24*N*v^2*I3 + 1/12*N^3*v^2*I3"},
      {3,
       "216*N^4*I2^4 + 189*N^2*I2^4 + 216*N^4*I2^2*I3 + 234*N^2*I2^2*I3 + 18*N^4*I3^2 + 30*N^2*I3^2"
       " + 45*N^4*I2*I4 + 60*N^2*I2*I4 + 5*N^4*I5 + 10*N^2*I5"},
      {4,
       "13608*N^5*I2^6 + 26892*N^3*I2^6 + 8505/2*N*I2^6"
       " + 22032*N^5*I2^4*I3 + 49248*N^3*I2^4*I3 + 8505*N*I2^4*I3"
       " + 7776*N^5*I2^2*I3^2 + 20304*N^3*I2^2*I3^2 + 3960*N*I2^2*I3^2"
       " + 288*N^5*I3^3 + 1056*N^3*I3^3 + 240*N*I3^3"
       " + 5400*N^5*I2^3*I4 + 13770*N^3*I2^3*I4 + 2565*N*I2^3*I4"
       " + 2160*N^5*I2*I3*I4 + 6480*N^3*I2*I3*I4 + 1440*N*I2*I3*I4"
       " + 90*N^5*I4^2 + 300*N^3*I4^2 + 165/2*N*I4^2"
       " + 1080*N^5*I2^2*I5 + 3330*N^3*I2^2*I5 + 675*N*I2^2*I5"
       " + 144*N^5*I3*I5 + 600*N^3*I3*I5 + 156*N*I3*I5"
       " + 168*N^5*I2*I6 + 630*N^3*I2*I6 + 147*N*I2*I6"
       " + 14*N^5*I7 + 70*N^3*I7 + 21*N*I7"},
  };
  return parse_text(t.at(g));
}

/// Fat genus-zero tower F^t_{0,k}, k = 2..4. Order one is (1/2) log(1/(1-I_1)).
inline Poly fat(int k) {
  static const std::map<int, std::string> t = {
      {2, "1/6*v^3*I2^2 + 1/12*v^2*I3"},
      {3, "1/6*v^6*I2^4 + 1/4*v^5*I2^2*I3 + 1/32*v^4*I3^2 + 1/16*v^4*I2*I4 + 1/144*v^3*I5"},
      {4,
       "7/24*v^9*I2^6 + 17/24*v^8*I2^4*I3 + 3/8*v^7*I2^2*I3^2 + 1/48*v^6*I3^3 + 5/24*v^7*I2^3*I4"
       " + 1/8*v^6*I2*I3*I4 + 1/160*v^5*I4^2 + 1/24*v^6*I2^2*I5 + 1/120*v^5*I3*I5"
       " + 1/180*v^5*I2*I6 + 1/2880*v^4*I7"},
  };
  return parse_text(t.at(k));
}

/// 2D F_2 in (w, J).
inline Poly two_d_jw() { return parse_text("2100/128*w^5*J2^3 + 1015/128*w^4*J2*J3 + 105/128*w^3*J4"); }

/// 2D F_g in the tilde form I~_j = I_j / (1-I_1)^{(2j+1)/3}.
inline Poly two_d_tilde(int g) {
  static const std::map<int, std::string> t = {
      {2, "7/1440*I2^3 + 29/5760*I2*I3 + 1/1152*I4"},
      {3,
       "245/20736*I2^6 + 193/6912*I2^4*I3 + 205/13824*I2^2*I3^2 + 583/580608*I3^3 + 53/6912*I2^3*I4"
       " + 1121/241920*I2*I3*I4 + 607/2903040*I4^2 + 17/11520*I2^2*I5 + 503/1451520*I3*I5"
       " + 77/414720*I2*I6 + 1/82944*I7"},
      {4,
       "259553/2488320*I2^9 + 475181/1244160*I2^7*I3 + 145693/331776*I2^5*I3^2"
       " + 43201/248832*I2^3*I3^3 + 134233/7962624*I2*I3^4 + 14147/124416*I2^6*I4"
       " + 83851/414720*I2^4*I3*I4 + 26017/331776*I2^2*I3^2*I4 + 185251/49766400*I3^3*I4"
       " + 5609/276480*I2^3*I4^2 + 177/20480*I2*I3*I4^2 + 175/995328*I4^3 + 21329/829440*I2^5*I5"
       " + 13783/414720*I2^3*I3*I5 + 1837/259200*I2*I3^2*I5 + 7597/1382400*I2^2*I4*I5"
       " + 719/829440*I3*I4*I5 + 533/1935360*I2*I5^2 + 2471/552960*I2^4*I6"
       " + 7897/2073600*I2^2*I3*I6 + 1997/6635520*I3^2*I6 + 1081/2322432*I2*I4*I6"
       " + 487/18579456*I5*I6 + 4907/8294400*I2^3*I7 + 16243/58060800*I2*I3*I7"
       " + 1781/92897280*I4*I7 + 53/921600*I2^2*I8 + 947/92897280*I3*I8"
       " + 149/39813120*I2*I9 + 1/7962624*I10"},
  };
  return parse_text(t.at(g));
}

/// Printed and corrected forms of the amended entries.
struct Misprint {
  std::string where;
  std::string printed_term;    // parsed with parse_text
  std::string corrected_term;  // value in the tables above
};

inline const std::vector<Misprint>& misprints() {
  static const std::vector<Misprint> m = {
      {"1D F3", "25/48*v^6*I2^2*I3", "25/48*v^5*I2^2*I3"},
      {"fat F0,3", "1/4*v^6*I2^2*I3", "1/4*v^5*I2^2*I3"},
      {"2D F2 (w,J)", "1015/384*w^4*J2*J3", "1015/128*w^4*J2*J3"},
      {"2D F3 tilde", "205/13824*I2^2*I3^3", "205/13824*I2^2*I3^2"},
      {"2D F4 tilde", "177/20480*I3*I4^2", "177/20480*I2*I3*I4^2"},
  };
  return m;
}

}  // namespace renorm::tables
