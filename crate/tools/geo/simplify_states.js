// Regenerates crates/core/assets/us_states.geojson from the Census Bureau
// cartographic boundary files redistributed by the `us-atlas` npm package
// (states-albers-10m.json: Albers USA projection with AK/HI insets, 975x610 frame).
//
//   npm install us-atlas topojson-client topojson-simplify
//   node simplify_states.js 2 10 > ../../crates/core/assets/us_states.geojson
//
// Arguments: simplification weight (planar triangle area) and the minimum area
// for secondary rings (small islands are dropped; the largest ring is always kept).

const topo = require("us-atlas/states-albers-10m.json");
const topojson = require("topojson-client");
const simplify = require("topojson-simplify");

const USPS_BY_FIPS = {
  "01": "AL", "02": "AK", "04": "AZ", "05": "AR", "06": "CA", "08": "CO", "09": "CT",
  "10": "DE", "11": "DC", "12": "FL", "13": "GA", "15": "HI", "16": "ID", "17": "IL",
  "18": "IN", "19": "IA", "20": "KS", "21": "KY", "22": "LA", "23": "ME", "24": "MD",
  "25": "MA", "26": "MI", "27": "MN", "28": "MS", "29": "MO", "30": "MT", "31": "NE",
  "32": "NV", "33": "NH", "34": "NJ", "35": "NM", "36": "NY", "37": "NC", "38": "ND",
  "39": "OH", "40": "OK", "41": "OR", "42": "PA", "44": "RI", "45": "SC", "46": "SD",
  "47": "TN", "48": "TX", "49": "UT", "50": "VT", "51": "VA", "53": "WA", "54": "WV",
  "55": "WI", "56": "WY",
};

const weight = parseFloat(process.argv[2] || "2");
const minArea = parseFloat(process.argv[3] || "10");

function ringArea(ring) {
  let a = 0;
  for (let i = 0; i < ring.length - 1; i++) {
    a += ring[i][0] * ring[i + 1][1] - ring[i + 1][0] * ring[i][1];
  }
  return Math.abs(a / 2);
}

const round1 = (v) => Math.round(v * 10) / 10;

let simplified = simplify.presimplify(topo);
simplified = simplify.simplify(simplified, weight);
const states = topojson.feature(simplified, simplified.objects.states);

const out = { type: "FeatureCollection", features: [] };
let points = 0;
for (const feature of states.features) {
  const usps = USPS_BY_FIPS[feature.id];
  if (!usps) continue; // territories
  const polygons = feature.geometry.type === "Polygon"
    ? [feature.geometry.coordinates]
    : feature.geometry.coordinates;
  // Outer rings only; consecutive duplicates introduced by rounding are removed.
  let rings = polygons
    .map((p) => p[0].map((c) => [round1(c[0]), round1(c[1])]))
    .map((r) => r.filter((c, i) => i === 0 || c[0] !== r[i - 1][0] || c[1] !== r[i - 1][1]))
    .filter((r) => r.length >= 4);
  rings.sort((a, b) => ringArea(b) - ringArea(a));
  rings = rings.filter((r, i) => i === 0 || ringArea(r) >= minArea);
  points += rings.reduce((s, r) => s + r.length, 0);
  out.features.push({
    type: "Feature",
    properties: { usps, name: feature.properties.name, fips: feature.id },
    geometry: { type: "MultiPolygon", coordinates: rings.map((r) => [r]) },
  });
}
out.features.sort((a, b) => (a.properties.usps < b.properties.usps ? -1 : 1));
console.error(`features ${out.features.length} points ${points}`);
process.stdout.write(JSON.stringify(out));
