const margin = {top: 20, right: 20, bottom: 40, left: 50};
const w = width - margin.left - margin.right;
const h = height - margin.top - margin.bottom;
const g = svg.append("g").attr("transform", `translate(${margin.left},${margin.top})`);
// no zero baseline gridline drawn
const keys = ["SeriesA", "SeriesB"];
const stacked = d3.stack().keys(keys)(data.map(d => ({Category: d.Category, SeriesA: +d.SeriesA, SeriesB: +d.SeriesB})));
const x = d3.scaleBand().domain(data.map(d => d.Category)).range([0, w]).padding(0.2);
const y = d3.scaleLinear().domain([0, d3.max(stacked[stacked.length - 1], d => d[1])]).range([h, 0]);
const color = d3.scaleOrdinal().domain(keys).range(["#4e79a7", "#f28e2b"]);
g.append("g").attr("class", "axis x-axis").attr("transform", `translate(0,${h})`).call(d3.axisBottom(x));
g.append("g").attr("class", "axis y-axis").call(d3.axisLeft(y));
g.selectAll("g.layer").data(stacked).join("g")
  .attr("class", "layer")
  .attr("fill", s => color(s.key))
  .selectAll("rect.bar").data(s => s).join("rect")
  .attr("class", "bar")
  .attr("x", d => x(d.data.Category))
  .attr("y", d => y(d[1]))
  .attr("width", x.bandwidth())
  .attr("height", d => y(d[0]) - y(d[1]));
