const margin = {top: 20, right: 20, bottom: 40, left: 50};
const w = width - margin.left - margin.right;
const h = height - margin.top - margin.bottom;
const g = svg.append("g").attr("transform", `translate(${margin.left},${margin.top})`);
const rows = data;
const x = d3.scalePoint().domain(rows.map(d => d.Month)).range([0, w]);
const y = d3.scaleLinear().domain([0, d3.max(rows, d => +d.Value)]).range([h, 0]);
g.append("g").attr("class", "axis x-axis").attr("transform", `translate(0,${h})`).call(d3.axisBottom(x));
g.append("g").attr("class", "axis y-axis").call(d3.axisLeft(y));
g.append("path").datum(rows)
  .attr("class", "area")
  .attr("fill", "#76b7b2")
  .attr("stroke", "none")
  .attr("stroke-width", 2)
  .attr("d", d3.area().x(d => x(d.Month)).y0(h).y1(d => y(+d.Value)));
