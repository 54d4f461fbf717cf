const margin = {top: 20, right: 20, bottom: 40, left: 50};
const w = width - margin.left - margin.right;
const h = height - margin.top - margin.bottom;
const g = svg.append("g").attr("transform", `translate(${margin.left},${margin.top})`);
const x = d3.scaleBand().domain(data.map(d => d.Category)).range([0, w]).padding(0.2);
const y = d3.scaleLinear().domain([0, d3.max(data, d => +d.Value)]).range([h, 0]);
g.append("g").attr("class", "axis x-axis").attr("transform", `translate(0,${h})`).call(d3.axisBottom(x));
g.append("g").attr("class", "axis y-axis").call(d3.axisLeft(y));
g.selectAll("rect.bar").data(data).join("rect")
  .attr("class", "bar")
  .attr("x", d => x(d.Category))
  .attr("y", d => y(+d.Value))
  .attr("width", x.bandwidth())
  .attr("height", d => h - y(+d.Value))
  .attr("fill", "#4e79a7");
